#include <catch2/catch_amalgamated.hpp>

#include <mvicp/linearity.hpp>

using namespace mvicp;

namespace {

struct InstanceSet {
    ProtocolParams p;
    std::vector<FieldElement> alphas;
    std::vector<SecretBlock> blocks;
    std::vector<Poly> F;
    std::vector<LinearInstance> instances;
};

// q instances signed against one shared set of evaluation points, which is
// the precondition for coefficient-wise combination.
InstanceSet honest_instances(unsigned q, std::uint64_t seed, unsigned n = 3, unsigned ell = 2,
                             unsigned kappa = 8) {
    InstanceSet set{ProtocolParams::make(n, ell, FieldParams::from_kappa(kappa)), {}, {}, {}, {}};
    Rng rng(seed);
    for (unsigned i = 0; i < n; ++i) set.alphas.push_back(set.p.field.sample_nonzero(rng));
    for (unsigned j = 0; j < q; ++j) {
        SecretBlock S;
        for (unsigned l = 0; l < ell; ++l) S.values.push_back(set.p.field.sample(rng));
        Poly F = random_with_prefix(S.values, set.p.t, rng);
        Poly R = random_poly(set.p.field, set.p.poly_len(), rng);
        FieldElement d = set.p.field.sample_nonzero(rng);
        LinearInstance inst{PolySig{F}, d, linear_combine(d, F, R), std::nullopt, {}};
        for (unsigned i = 0; i < n; ++i)
            inst.triples.push_back({set.alphas[i], eval(F, set.alphas[i]), eval(R, set.alphas[i])});
        set.blocks.push_back(S);
        set.F.push_back(F);
        set.instances.push_back(std::move(inst));
    }
    return set;
}

SecretBlock sum_blocks(const std::vector<SecretBlock>& blocks) {
    SecretBlock acc = blocks.at(0);
    for (std::size_t j = 1; j < blocks.size(); ++j) acc = block_add(acc, blocks[j]);
    return acc;
}

}  // namespace

TEST_CASE("lifting a public block pads it with zero masks", "[linearity]") {
    ProtocolParams p = ProtocolParams::make(3, 2, FieldParams::from_kappa(4));
    SecretBlock S{{p.field.element(0x3), p.field.element(0xA)}};
    Poly lifted = lift_public_sig(S, p);
    REQUIRE(lifted.len() == p.poly_len());
    CHECK(lifted.coeffs[0].value == 0x3);
    CHECK(lifted.coeffs[1].value == 0xA);
    for (unsigned i = p.ell; i < p.poly_len(); ++i) CHECK(lifted.coeffs[i].is_zero());
    // Its evaluations depend only on the public block.
    FieldElement x = p.field.element(0x7);
    CHECK(eval(lifted, x) == S.values[0] + S.values[1] * x);
    CHECK_THROWS_AS(lift_public_sig(SecretBlock{{p.field.one()}}, p), ConfigError);
}

TEST_CASE("combination sums coefficients, prefixes, and evaluations", "[linearity]") {
    InstanceSet set = honest_instances(3, 41);
    SignatureBundle bundle = SignatureBundle::make(set.p, set.instances);
    ICSignature combined = combine_signatures(bundle);
    const Poly& G = std::get<PolySig>(combined).F;

    Poly expected = poly_add(poly_add(set.F[0], set.F[1]), set.F[2]);
    CHECK(G == expected);
    CHECK(SecretBlock{extract_secrets(G, set.p.ell)} == sum_blocks(set.blocks));

    for (unsigned i = 0; i < set.p.n; ++i) {
        std::vector<FieldElement> vs;
        for (const auto& inst : set.instances) vs.push_back(inst.triples[i].v);
        CHECK(eval(G, set.alphas[i]) == combine_verification(vs));
    }
    CHECK_THROWS_AS(combine_verification(std::vector<FieldElement>{}), ConfigError);
}

TEST_CASE("evaluation is linear across the whole small field", "[linearity]") {
    FieldParams f = FieldParams::from_kappa(4);
    Rng rng(43);
    Poly a = random_poly(f, 4, rng), b = random_poly(f, 4, rng), c = random_poly(f, 4, rng);
    Poly s = poly_add(poly_add(a, b), c);
    for (std::uint64_t x = 0; x < 16; ++x) {
        FieldElement xe = f.element(x);
        REQUIRE(eval(s, xe) == eval(a, xe) + eval(b, xe) + eval(c, xe));
    }
}

TEST_CASE("bundles reject mismatched instances", "[linearity]") {
    InstanceSet set = honest_instances(2, 44);
    CHECK_NOTHROW(SignatureBundle::make(set.p, set.instances));
    CHECK_THROWS_AS(SignatureBundle::make(set.p, {}), ConfigError);

    auto bad_alpha = set.instances;
    bad_alpha[1].triples[0].alpha = bad_alpha[1].triples[0].alpha + set.p.field.one();
    CHECK_THROWS_AS(SignatureBundle::make(set.p, bad_alpha), ConfigError);

    auto bad_count = set.instances;
    bad_count[0].triples.pop_back();
    CHECK_THROWS_AS(SignatureBundle::make(set.p, bad_count), ConfigError);

    auto bad_b = set.instances;
    bad_b[0].B = zero_poly(set.p.field, set.p.poly_len() - 1);
    CHECK_THROWS_AS(SignatureBundle::make(set.p, bad_b), ConfigError);

    // Public form must come with the matching broadcast on record.
    auto bad_form = set.instances;
    bad_form[0].sig = PublicSig{set.blocks[0]};
    CHECK_THROWS_AS(SignatureBundle::make(set.p, bad_form), ConfigError);
}

TEST_CASE("combined reveals accept the true sum and reject a shifted one", "[linearity]") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        InstanceSet set = honest_instances(3, seed, 5, 2);
        SignatureBundle bundle = SignatureBundle::make(set.p, set.instances);
        RevealPayload payload{combine_signatures(bundle)};
        for (unsigned i = 0; i < set.p.n; ++i)
            REQUIRE(reveal_combined_verifier(combined_view(bundle, i), payload) == Vote::Accept);

        Poly shifted = std::get<PolySig>(payload.sig).F;
        shifted.coeffs[0] = shifted.coeffs[0] + set.p.field.one();
        unsigned rejects = 0;
        for (unsigned i = 0; i < set.p.n; ++i)
            rejects += reveal_combined_verifier(combined_view(bundle, i),
                                                RevealPayload{PolySig{shifted}}) == Vote::Reject;
        REQUIRE(rejects == set.p.n);  // every honest point catches a constant shift
    }
    CHECK_THROWS_AS(combined_view(SignatureBundle::make(honest_instances(1, 50).p,
                                                        honest_instances(1, 50).instances),
                                  3),
                    ConfigError);
}

TEST_CASE("an inconsistent instance exonerates the combined payload", "[linearity]") {
    InstanceSet set = honest_instances(2, 61);
    // Verifier 0's held value for instance 1 is off, but the challenge data
    // stays honest, so its own recheck fails and the combined C2 fires.
    set.instances[1].triples[0].v = set.instances[1].triples[0].v + set.p.field.one();
    SignatureBundle bundle = SignatureBundle::make(set.p, set.instances);
    RevealPayload payload{combine_signatures(bundle)};
    CombinedVerifierView view = combined_view(bundle, 0);
    FieldElement claimed = eval(std::get<PolySig>(payload.sig).F, view.alpha);
    CHECK(claimed != combine_verification(view.v));  // combined C1 is false
    CHECK(reveal_combined_verifier(view, payload) == Vote::Accept);
    CHECK(reveal_combined_verifier(combined_view(bundle, 1), payload) == Vote::Accept);  // plain C1
}

TEST_CASE("broadcast instances are combined through their public lift", "[linearity]") {
    InstanceSet set = honest_instances(3, 62);
    // Instance 2's dealer went public: the signature degenerates and every
    // verifier recomputes its share of the sum from the block itself.
    set.instances[2].sig = PublicSig{set.blocks[2]};
    set.instances[2].dealer_broadcast = set.blocks[2];
    SignatureBundle bundle = SignatureBundle::make(set.p, set.instances);
    RevealPayload payload{combine_signatures(bundle)};

    Poly expected = poly_add(poly_add(set.F[0], set.F[1]), lift_public_sig(set.blocks[2], set.p));
    CHECK(std::get<PolySig>(payload.sig).F == expected);
    CHECK(SecretBlock{extract_secrets(expected, set.p.ell)} == sum_blocks(set.blocks));
    for (unsigned i = 0; i < set.p.n; ++i)
        REQUIRE(reveal_combined_verifier(combined_view(bundle, i), payload) == Vote::Accept);

    // A payload that lies about the public instance is caught at every point:
    // the broadcast share is recomputed, never trusted from the payload.
    Poly lying = poly_add(poly_add(set.F[0], set.F[1]), set.F[2]);
    for (unsigned i = 0; i < set.p.n; ++i)
        REQUIRE(reveal_combined_verifier(combined_view(bundle, i), RevealPayload{PolySig{lying}}) ==
                Vote::Reject);
}

TEST_CASE("offsets shift the prefix and cancel when applied twice", "[linearity]") {
    InstanceSet set = honest_instances(1, 63);
    const Poly& F = set.F[0];
    std::vector<FieldElement> a = set.blocks[0].values;  // offset by the block itself

    ICSignature off = offset_signature(PolySig{F}, a, set.p);
    const Poly& G = std::get<PolySig>(off).F;
    for (unsigned l = 0; l < set.p.ell; ++l) CHECK(G.coeffs[l].is_zero());
    for (unsigned l = set.p.ell; l < set.p.poly_len(); ++l) CHECK(G.coeffs[l] == F.coeffs[l]);

    ICSignature twice = offset_signature(off, a, set.p);
    CHECK(std::get<PolySig>(twice).F == F);

    for (unsigned i = 0; i < set.p.n; ++i) {
        FieldElement v = set.instances[0].triples[i].v;
        REQUIRE(eval(G, set.alphas[i]) == offset_verification(v, a, set.alphas[i]));
    }
    CHECK_THROWS_AS(offset_signature(PolySig{F}, {set.p.field.one()}, set.p), ConfigError);
    CHECK_THROWS_AS(offset_verification(set.p.field.one(), {}, set.p.field.one()), ConfigError);
}

TEST_CASE("offsetting a public signature lifts it first", "[linearity]") {
    ProtocolParams p = ProtocolParams::make(3, 2, FieldParams::from_kappa(8));
    Rng rng(64);
    SecretBlock S{{p.field.sample(rng), p.field.sample(rng)}};
    std::vector<FieldElement> a{p.field.sample(rng), p.field.sample(rng)};
    ICSignature off = offset_signature(PublicSig{S}, a, p);
    const Poly& G = std::get<PolySig>(off).F;
    CHECK(G.coeffs[0] == S.values[0] + a[0]);
    CHECK(G.coeffs[1] == S.values[1] + a[1]);
    CHECK(extract_secrets(G, p.ell) ==
          block_add(S, SecretBlock{a}).values);
    CHECK_THROWS_AS(block_add(S, SecretBlock{{p.field.one()}}), ConfigError);
}
