#pragma once

// Linear operations on signatures that share one dealer and one verifier
// point set: coefficient-wise combination of several signatures, lifting of
// publicly revealed blocks into polynomial form, and public offsets.

#include <vector>

#include "icp.hpp"

namespace mvicp {

// A broadcast block S becomes the degenerate polynomial with prefix S and
// zero masking coefficients; every verification value is recomputable from
// public data, so nothing secret rides on the lift.
inline Poly lift_public_sig(const SecretBlock& s, const ProtocolParams& p) {
    if (s.values.size() != p.ell) throw ConfigError("block size differs from ell");
    std::vector<FieldElement> c = s.values;
    c.resize(p.poly_len(), p.field.zero());
    return Poly(std::move(c));
}

// One completed Gen/Ver instance as the combining layer sees it: INT's
// signature, the public challenge data, and each verifier's private triple.
struct LinearInstance {
    ICSignature sig;
    FieldElement d;
    Poly B;
    std::optional<SecretBlock> dealer_broadcast;
    std::vector<VerificationTriple> triples;  // indexed by verifier
};

struct SignatureBundle {
    ProtocolParams params;
    std::vector<LinearInstance> instances;

    // Combination is only sound when every instance was issued against the
    // same verifier points, so the constructor enforces shared alphas.
    static SignatureBundle make(const ProtocolParams& p, std::vector<LinearInstance> instances) {
        if (instances.empty()) throw ConfigError("bundle needs at least one instance");
        for (const auto& inst : instances) {
            if (inst.triples.size() != p.n)
                throw ConfigError("instance carries the wrong verifier count");
            if (inst.B.len() != p.poly_len() || inst.B.field() != p.field)
                throw ConfigError("instance challenge polynomial has the wrong shape");
            if (inst.dealer_broadcast.has_value() != std::holds_alternative<PublicSig>(inst.sig))
                throw ConfigError("signature form disagrees with dealer broadcast");
            for (unsigned i = 0; i < p.n; ++i)
                if (inst.triples[i].alpha != instances[0].triples[i].alpha)
                    throw ConfigError("instances disagree on a verifier's evaluation point");
        }
        return SignatureBundle{p, std::move(instances)};
    }
};

// Coefficient-wise sum; public-form instances are lifted first. The result is
// always polynomial-form.
inline ICSignature combine_signatures(const SignatureBundle& bundle) {
    Poly acc = zero_poly(bundle.params.field, bundle.params.poly_len());
    for (const auto& inst : bundle.instances) {
        if (const auto* ps = std::get_if<PolySig>(&inst.sig)) {
            if (ps->F.len() != bundle.params.poly_len())
                throw ConfigError("instance signature has the wrong length");
            acc = poly_add(acc, ps->F);
        } else {
            acc = poly_add(acc, lift_public_sig(std::get<PublicSig>(inst.sig).S, bundle.params));
        }
    }
    return PolySig{acc};
}

inline FieldElement combine_verification(const std::vector<FieldElement>& vs) {
    if (vs.empty()) throw ConfigError("nothing to combine");
    FieldElement acc = vs[0];
    for (std::size_t i = 1; i < vs.size(); ++i) acc = acc + vs[i];
    return acc;
}

// Everything verifier i holds about a bundle at combined-reveal time.
struct CombinedVerifierView {
    ProtocolParams params;
    FieldElement alpha;
    std::vector<FieldElement> v, r, d;  // per instance
    std::vector<Poly> B;
    std::vector<std::optional<SecretBlock>> dealer_broadcast;
};

inline CombinedVerifierView combined_view(const SignatureBundle& bundle, unsigned verifier) {
    if (verifier >= bundle.params.n) throw ConfigError("verifier index out of range");
    CombinedVerifierView view;
    view.params = bundle.params;
    view.alpha = bundle.instances[0].triples[verifier].alpha;
    for (const auto& inst : bundle.instances) {
        view.v.push_back(inst.triples[verifier].v);
        view.r.push_back(inst.triples[verifier].r);
        view.d.push_back(inst.d);
        view.B.push_back(inst.B);
        view.dealer_broadcast.push_back(inst.dealer_broadcast);
    }
    return view;
}

// Combined vote. For dealer-broadcast instances the verification value is
// recomputed from the public block, never taken from the payload side, so a
// dishonest lift surfaces as a failed evaluation. C2 consults only the
// instances where the dealer stayed silent.
inline Vote reveal_combined_verifier(const CombinedVerifierView& view,
                                     const RevealPayload& payload_in) {
    const ProtocolParams& p = view.params;
    RevealPayload payload = normalize_payload(p, payload_in);
    const auto* ps = std::get_if<PolySig>(&payload.sig);
    if (!ps) return Vote::Reject;  // combined payloads are polynomial-form

    FieldElement sum = p.field.zero();
    for (std::size_t j = 0; j < view.v.size(); ++j) {
        if (view.dealer_broadcast[j])
            sum = sum + eval(lift_public_sig(*view.dealer_broadcast[j], p), view.alpha);
        else
            sum = sum + view.v[j];
    }
    if (eval(ps->F, view.alpha) == sum) return Vote::Accept;  // combined C1

    for (std::size_t j = 0; j < view.v.size(); ++j) {
        if (view.dealer_broadcast[j]) continue;
        if (eval(view.B[j], view.alpha) != view.d[j] * view.v[j] + view.r[j])
            return Vote::Accept;  // combined C2
    }
    return Vote::Reject;
}

// Public offset: XOR a known block into the secret prefix. Offsetting a
// public-form signature lifts it first, so the result is polynomial-form.
inline ICSignature offset_signature(const ICSignature& sig, const std::vector<FieldElement>& a,
                                    const ProtocolParams& p) {
    if (a.size() != p.ell) throw ConfigError("offset size differs from ell");
    Poly f = std::holds_alternative<PolySig>(sig) ? std::get<PolySig>(sig).F
                                                  : lift_public_sig(std::get<PublicSig>(sig).S, p);
    if (f.len() != p.poly_len()) throw ConfigError("signature has the wrong length");
    for (std::size_t i = 0; i < a.size(); ++i) f.coeffs[i] = f.coeffs[i] + a[i];
    return PolySig{f};
}

// Matching adjustment to a verification value: v + sum_l a_l * alpha^l.
inline FieldElement offset_verification(const FieldElement& v, const std::vector<FieldElement>& a,
                                        const FieldElement& alpha) {
    if (a.empty()) throw ConfigError("offset must hold at least one element");
    FieldElement acc = a[a.size() - 1];
    for (std::size_t i = a.size() - 1; i-- > 0;) acc = acc * alpha + a[i];
    return v + acc;
}

inline SecretBlock block_add(const SecretBlock& x, const SecretBlock& y) {
    if (x.values.size() != y.values.size()) throw ConfigError("block size mismatch");
    SecretBlock out;
    out.values.reserve(x.values.size());
    for (std::size_t i = 0; i < x.values.size(); ++i) out.values.push_back(x.values[i] + y.values[i]);
    return out;
}

}  // namespace mvicp
