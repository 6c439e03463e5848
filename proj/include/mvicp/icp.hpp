#pragma once

// Three-phase information checking protocol among a dealer D, an
// intermediary INT, and n = 2t+1 verifiers:
//   Gen:    D hands INT a masked polynomial pair (F, R) carrying the secret
//           block, and hands each verifier a private evaluation triple.
//   Ver:    INT broadcasts a random challenge combination B = d*F + R; the
//           dealer either stays silent (consistent) or broadcasts the
//           secrets (inconsistent / malformed challenge).
//   Reveal: INT broadcasts its signature; verifiers vote; majority decides.
// Every transition is deterministic given its inputs and the RNG stream.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "poly.hpp"

namespace mvicp {

struct ProtocolParams {
    std::uint32_t n = 0;    // verifier count, n = 2t + 1
    std::uint32_t t = 0;    // corruption threshold
    std::uint32_t ell = 0;  // secrets per signature
    FieldParams field;

    static ProtocolParams make(unsigned n, unsigned ell, FieldParams field) {
        if (n < 3 || n % 2 == 0) throw ConfigError("n must be odd and at least 3");
        if (ell < 1) throw ConfigError("ell must be at least 1");
        if (ell > 60000 || n > 60000) throw ConfigError("parameter exceeds supported range");
        ProtocolParams p;
        p.n = n;
        p.t = (n - 1) / 2;
        p.ell = ell;
        p.field = field;
        return p;
    }

    std::size_t poly_len() const { return std::size_t{ell} + t + 1; }
    ErrorBound epsilon() const { return field.error_bound(n); }

    friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

struct SecretBlock {
    std::vector<FieldElement> values;
    friend bool operator==(const SecretBlock&, const SecretBlock&) = default;
};

struct VerificationTriple {
    FieldElement alpha, v, r;
    friend bool operator==(const VerificationTriple&, const VerificationTriple&) = default;
};

// --------------------------------------------------------------------------
// Messages.

struct GenToInt {
    Poly F, R;
};

struct GenToVerifier {
    FieldElement alpha, v, r;
};

struct VerChallenge {
    FieldElement d;
    Poly B;
};

struct DealerReveal {
    SecretBlock S;
};

struct PolySig {
    Poly F;
    friend bool operator==(const PolySig&, const PolySig&) = default;
};

struct PublicSig {
    SecretBlock S;
    friend bool operator==(const PublicSig&, const PublicSig&) = default;
};

using ICSignature = std::variant<PolySig, PublicSig>;

struct RevealPayload {
    ICSignature sig;
};

struct PublishedTriple {
    FieldElement alpha, v, r;
};

enum class Vote : std::uint8_t { Reject = 0, Accept = 1 };

struct Verdict {
    bool accepted = false;
    std::optional<SecretBlock> secrets;  // present iff accepted
};

// --------------------------------------------------------------------------
// Party states.

struct DealerState {
    ProtocolParams params;
    Poly F, R;
    std::vector<VerificationTriple> triples;
    bool broadcast_secrets = false;
};

struct IntermediaryState {
    ProtocolParams params;
    Poly F, R;
    FieldElement d;  // own challenge, set during Ver
    Poly B;
    bool challenged = false;
    std::optional<SecretBlock> dealer_broadcast;

    IntermediaryState() = default;

    IntermediaryState(const ProtocolParams& p, const GenToInt& m)
        : params(p), F(m.F), R(m.R), d(p.field.zero()), B(zero_poly(p.field, p.poly_len())) {
        if (F.len() != p.poly_len() || R.len() != p.poly_len())
            throw ConfigError("masking polynomials have the wrong length");
    }
};

struct VerifierState {
    ProtocolParams params;
    FieldElement alpha, v, r;
    FieldElement d;  // observed challenge
    Poly B;
    bool challenged = false;
    std::optional<SecretBlock> dealer_broadcast;

    VerifierState() = default;

    VerifierState(const ProtocolParams& p, const GenToVerifier& m)
        : params(p), alpha(m.alpha), v(m.v), r(m.r), d(p.field.zero()),
          B(zero_poly(p.field, p.poly_len())) {}

    void observe_challenge(const VerChallenge& normalized) {
        d = normalized.d;
        B = normalized.B;
        challenged = true;
    }

    void observe_dealer_broadcast(const SecretBlock& s) { dealer_broadcast = s; }
};

// --------------------------------------------------------------------------
// Gen.

struct GenOutput {
    DealerState dealer;
    GenToInt to_int;
    std::vector<GenToVerifier> to_verifiers;
};

// Draw order is part of the deterministic contract: F's t+1 masking
// coefficients, then all of R, then alpha_1..alpha_n (each nonzero; repeats
// across verifiers are permitted).
inline GenOutput gen_dealer(const ProtocolParams& p, const SecretBlock& S, Rng& rng) {
    if (S.values.size() != p.ell) throw ConfigError("secret block size differs from ell");
    for (const auto& s : S.values)
        detail::check_same_field(s.kappa, s.taps, p.field.kappa, p.field.taps);

    Poly F = random_with_prefix(S.values, p.t, rng);
    Poly R = random_poly(p.field, p.poly_len(), rng);

    GenOutput out{DealerState{p, F, R, {}, false}, GenToInt{F, R}, {}};
    out.to_verifiers.reserve(p.n);
    for (unsigned i = 0; i < p.n; ++i) {
        FieldElement alpha = p.field.sample_nonzero(rng);
        FieldElement v = eval(F, alpha);
        FieldElement r = eval(R, alpha);
        out.dealer.triples.push_back(VerificationTriple{alpha, v, r});
        out.to_verifiers.push_back(GenToVerifier{alpha, v, r});
    }
    return out;
}

// --------------------------------------------------------------------------
// Ver.

inline VerChallenge ver_round1_int(IntermediaryState& s, Rng& rng) {
    s.d = s.params.field.sample_nonzero(rng);
    s.B = linear_combine(s.d, s.F, s.R);
    s.challenged = true;
    return VerChallenge{s.d, s.B};
}

// Malformed challenges (zero d, wrong-shape B) collapse to the fixed default,
// which the dealer treats as failed verification.
inline VerChallenge normalize_challenge(const ProtocolParams& p, const VerChallenge& ch) {
    bool ok = ch.d.kappa == p.field.kappa && ch.d.taps == p.field.taps && !ch.d.is_zero() &&
              ch.B.len() == p.poly_len() && ch.B.field() == p.field;
    if (ok) return ch;
    return VerChallenge{p.field.zero(), zero_poly(p.field, p.poly_len())};
}

// Returns the broadcast iff any triple disagrees with B (or the challenge was
// malformed); silence means every verifier's triple checked out.
inline std::optional<DealerReveal> ver_round2_dealer(DealerState& s, const VerChallenge& ch_in) {
    VerChallenge ch = normalize_challenge(s.params, ch_in);
    bool consistent = !ch.d.is_zero();
    if (consistent)
        for (const auto& tr : s.triples)
            if (eval(ch.B, tr.alpha) != ch.d * tr.v + tr.r) {
                consistent = false;
                break;
            }
    if (consistent) return std::nullopt;
    s.broadcast_secrets = true;
    return DealerReveal{SecretBlock{extract_secrets(s.F, s.params.ell)}};
}

inline void observe_challenge(IntermediaryState& s, const VerChallenge& normalized) {
    s.d = normalized.d;
    s.B = normalized.B;
    s.challenged = true;
}

inline void observe_dealer_broadcast(IntermediaryState& s, const SecretBlock& b) {
    s.dealer_broadcast = b;
}

// A dealer broadcast supersedes the polynomial: the signature degenerates to
// the public block.
inline ICSignature finalize_sig_int(const IntermediaryState& s) {
    if (s.dealer_broadcast) return PublicSig{*s.dealer_broadcast};
    return PolySig{s.F};
}

// --------------------------------------------------------------------------
// Reveal (two-round).

inline RevealPayload reveal_round1_int(const ICSignature& sig) { return RevealPayload{sig}; }

inline RevealPayload normalize_payload(const ProtocolParams& p, const RevealPayload& in) {
    if (const auto* ps = std::get_if<PolySig>(&in.sig)) {
        if (ps->F.len() == p.poly_len() && ps->F.field() == p.field) return in;
    } else if (const auto* pb = std::get_if<PublicSig>(&in.sig)) {
        bool ok = pb->S.values.size() == p.ell;
        for (const auto& e : pb->S.values)
            ok = ok && e.kappa == p.field.kappa && e.taps == p.field.taps;
        if (ok) return in;
    }
    return RevealPayload{PolySig{zero_poly(p.field, p.poly_len())}};
}

// Core voting predicate. With a dealer broadcast on record only the matching
// public block is acceptable. Otherwise a polynomial payload earns Accept if
// it matches the verifier's point (C1) or if the verifier's own triple never
// matched the challenge polynomial, which exonerates INT (C2).
inline Vote vote_on_payload(const ProtocolParams& p, const FieldElement& alpha,
                            const FieldElement& v, const FieldElement& r, const FieldElement& d,
                            const Poly& B, const std::optional<SecretBlock>& dealer_broadcast,
                            const RevealPayload& payload_in) {
    RevealPayload payload = normalize_payload(p, payload_in);
    if (dealer_broadcast) {
        const auto* pb = std::get_if<PublicSig>(&payload.sig);
        return (pb && pb->S == *dealer_broadcast) ? Vote::Accept : Vote::Reject;
    }
    const auto* ps = std::get_if<PolySig>(&payload.sig);
    if (!ps) return Vote::Reject;  // public form without a dealer broadcast
    if (eval(ps->F, alpha) == v) return Vote::Accept;            // C1
    if (eval(B, alpha) != d * v + r) return Vote::Accept;        // C2
    return Vote::Reject;
}

inline Vote reveal_round2_verifier(const VerifierState& s, const RevealPayload& payload) {
    return vote_on_payload(s.params, s.alpha, s.v, s.r, s.d, s.B, s.dealer_broadcast, payload);
}

inline Verdict tally(const ProtocolParams& p, const std::vector<Vote>& votes,
                     const RevealPayload& payload_in) {
    if (votes.size() != p.n) throw ConfigError("vote count differs from n");
    unsigned accepts = 0;
    for (Vote v : votes) accepts += v == Vote::Accept ? 1 : 0;
    Verdict verdict;
    verdict.accepted = accepts >= p.t + 1;
    if (verdict.accepted) {
        RevealPayload payload = normalize_payload(p, payload_in);
        if (const auto* ps = std::get_if<PolySig>(&payload.sig))
            verdict.secrets = SecretBlock{extract_secrets(ps->F, p.ell)};
        else
            verdict.secrets = std::get<PublicSig>(payload.sig).S;
    }
    return verdict;
}

// --------------------------------------------------------------------------
// Reveal (one-round). Verifiers publish their triples alongside INT's
// payload; every vote is then a public computation on broadcast data, so
// anyone can run the same predicate and reach the same verdict.

inline Vote evaluate_published_triple(const ProtocolParams& p, const FieldElement& d,
                                      const Poly& B,
                                      const std::optional<SecretBlock>& dealer_broadcast,
                                      const RevealPayload& payload, const PublishedTriple& tr) {
    return vote_on_payload(p, tr.alpha, tr.v, tr.r, d, B, dealer_broadcast, payload);
}

inline Verdict reveal_oneround(const ProtocolParams& p, const FieldElement& d, const Poly& B,
                               const std::optional<SecretBlock>& dealer_broadcast,
                               const RevealPayload& payload,
                               const std::vector<PublishedTriple>& triples) {
    if (triples.size() != p.n) throw ConfigError("published triple count differs from n");
    std::vector<Vote> votes;
    votes.reserve(p.n);
    for (const auto& tr : triples)
        votes.push_back(evaluate_published_triple(p, d, B, dealer_broadcast, payload, tr));
    return tally(p, votes, payload);
}

}  // namespace mvicp
