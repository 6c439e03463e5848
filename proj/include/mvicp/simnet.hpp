#pragma once

// Single-process adversarial simulation: a round scheduler over an
// authenticated broadcast-plus-private-channel network model, a catalog of
// corruption strategies, Monte-Carlo rate estimation, an exhaustive secrecy
// audit, and exact communication-cost accounting.
//
// Determinism contract: one mt19937_64 stream per session, drawn in a fixed
// documented order, so identical configs produce byte-identical transcripts.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "linearity.hpp"
#include "serialize.hpp"

namespace mvicp {

// ---------------------------------------------------------------------------
// Corruption strategies.

enum class Strategy {
    HonestAll,
    ForgingINT,
    GuessingINT,
    InconsistentDealer,
    DGuessingDealer,
    RushingINTOneRound,
};

struct StrategyInfo {
    Strategy id;
    const char* name;
    const char* summary;
    bool corrupts_int;
    bool corrupts_dealer;
    bool needs_oneround;
};

inline const std::vector<StrategyInfo>& strategy_catalog() {
    static const std::vector<StrategyInfo> catalog = {
        {Strategy::HonestAll, "honest",
         "every party follows the protocol; corruption flags mean passive observation", false,
         false, false},
        {Strategy::ForgingINT, "forging-int",
         "corrupted intermediary reveals a fresh polynomial carrying a different secret block",
         true, false, false},
        {Strategy::GuessingINT, "guessing-int",
         "corrupted intermediary perturbs its polynomial so it agrees with the original at "
         "exactly one guessed point",
         true, false, false},
        {Strategy::InconsistentDealer, "inconsistent-dealer",
         "corrupted dealer hands each honest verifier a wrong value wired to a guessed "
         "challenge, then stays silent",
         false, true, false},
        {Strategy::DGuessingDealer, "d-guessing-dealer",
         "same fabrication as inconsistent-dealer, framed as a challenge-guessing attack on "
         "rejection",
         false, true, false},
        {Strategy::RushingINTOneRound, "rushing-int-oneround",
         "corrupted intermediary reads same-round published triples and interpolates a forged "
         "polynomial through them",
         true, false, true},
    };
    return catalog;
}

inline const StrategyInfo& strategy_info(Strategy s) {
    for (const auto& info : strategy_catalog())
        if (info.id == s) return info;
    throw ConfigError("unknown strategy");
}

inline Strategy strategy_from_name(const std::string& name) {
    for (const auto& info : strategy_catalog())
        if (name == info.name) return info.id;
    throw ConfigError("unknown strategy name: " + name);
}

// ---------------------------------------------------------------------------
// Session configuration.

enum class RevealMode : std::uint8_t { TwoRound = 2, OneRound = 1 };

struct SessionConfig {
    ProtocolParams params;
    bool corrupt_dealer = false;
    bool corrupt_int = false;
    std::vector<unsigned> corrupt_verifiers;  // 1-based ids
    Strategy strategy = Strategy::HonestAll;
    bool rushing = false;
    RevealMode reveal_mode = RevealMode::TwoRound;
    std::uint64_t seed = 0;

    bool is_corrupt_verifier(unsigned index0) const {
        return std::find(corrupt_verifiers.begin(), corrupt_verifiers.end(), index0 + 1) !=
               corrupt_verifiers.end();
    }

    void validate() const {
        if (params.n < 3 || params.n % 2 == 0 || params.t != (params.n - 1) / 2)
            throw ConfigError("n must be odd, at least 3, with t = (n-1)/2");
        if (params.ell < 1) throw ConfigError("ell must be at least 1");
        if (params.field.kappa < 1 || params.field.kappa > 64)
            throw ConfigError("kappa must lie in 1..64");
        if (corrupt_verifiers.size() > params.t)
            throw ConfigError("at most t verifiers may be corrupted");
        for (std::size_t i = 0; i < corrupt_verifiers.size(); ++i) {
            if (corrupt_verifiers[i] < 1 || corrupt_verifiers[i] > params.n)
                throw ConfigError("corrupted verifier id out of range");
            for (std::size_t j = i + 1; j < corrupt_verifiers.size(); ++j)
                if (corrupt_verifiers[i] == corrupt_verifiers[j])
                    throw ConfigError("duplicate corrupted verifier id");
        }
        const StrategyInfo& info = strategy_info(strategy);
        if (info.corrupts_int && !corrupt_int)
            throw ConfigError("strategy requires a corrupted intermediary");
        if (info.corrupts_dealer && !corrupt_dealer)
            throw ConfigError("strategy requires a corrupted dealer");
        if (info.needs_oneround && reveal_mode != RevealMode::OneRound)
            throw ConfigError("strategy requires the one-round reveal");
        // Rushing is modeled solely for the flagged one-round forgery demo.
        if (rushing && strategy != Strategy::RushingINTOneRound)
            throw ConfigError("rushing is only allowed for the one-round forgery demo");
    }

    std::string echo() const {
        std::ostringstream os;
        std::vector<unsigned> ids = corrupt_verifiers;
        std::sort(ids.begin(), ids.end());
        os << "corrupt_dealer=" << (corrupt_dealer ? 1 : 0) << '\n';
        os << "corrupt_int=" << (corrupt_int ? 1 : 0) << '\n';
        os << "corrupt_verifiers=";
        for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
        os << '\n';
        os << "ell=" << params.ell << '\n';
        os << "epsilon=" << params.epsilon().str() << '\n';
        os << "kappa=" << params.field.kappa << '\n';
        os << "n=" << params.n << '\n';
        os << "reveal_rounds=" << (reveal_mode == RevealMode::TwoRound ? 2 : 1) << '\n';
        os << "rushing=" << (rushing ? 1 : 0) << '\n';
        os << "seed=" << seed << '\n';
        os << "strategy=" << strategy_info(strategy).name << '\n';
        os << "t=" << params.t << '\n';
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Cost accounting and transcripts.

struct PhaseCost {
    std::uint64_t private_bits = 0;
    std::uint64_t broadcast_bits = 0;
    unsigned rounds = 0;
    friend bool operator==(const PhaseCost&, const PhaseCost&) = default;
};

struct CostLedger {
    PhaseCost gen, ver, reveal;
    std::uint64_t total_private() const {
        return gen.private_bits + ver.private_bits + reveal.private_bits;
    }
    std::uint64_t total_broadcast() const {
        return gen.broadcast_bits + ver.broadcast_bits + reveal.broadcast_bits;
    }
    friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

struct TranscriptRecord {
    unsigned round = 0;
    std::string sender;
    bool broadcast = false;
    std::string recipient;  // "all" for broadcasts
    Bytes payload;
};

struct Transcript {
    std::string config_echo;
    std::vector<std::string> flags;
    std::vector<TranscriptRecord> records;
    Verdict verdict;
    CostLedger ledger;

    std::string export_text() const {
        std::ostringstream os;
        std::istringstream cfg(config_echo);
        for (std::string line; std::getline(cfg, line);)
            if (!line.empty()) os << "config " << line << '\n';
        for (const auto& f : flags) os << "flag " << f << '\n';
        for (const auto& r : records)
            os << "msg " << r.round << ' ' << r.sender << ' ' << (r.broadcast ? "bcast" : "priv")
               << ' ' << r.recipient << ' ' << to_hex(r.payload) << '\n';
        os << "verdict " << (verdict.accepted ? "accepted" : "rejected") << '\n';
        os << "secrets ";
        if (verdict.secrets) {
            Bytes b;
            put_block(b, *verdict.secrets);
            os << to_hex(b);
        } else {
            os << '-';
        }
        os << '\n';
        auto phase = [&](const char* name, const PhaseCost& c) {
            os << "cost " << name << ' ' << c.private_bits << ' ' << c.broadcast_bits << ' '
               << c.rounds << '\n';
        };
        phase("gen", ledger.gen);
        phase("ver", ledger.ver);
        phase("reveal", ledger.reveal);
        return os.str();
    }
};

inline std::string party_name(int index0) {  // -2 dealer, -1 intermediary, >=0 verifier
    if (index0 == -2) return "D";
    if (index0 == -1) return "INT";
    return "P" + std::to_string(index0 + 1);
}

struct SessionOutcome {
    SessionConfig config;
    Transcript transcript;
    SecretBlock dealt;                  // block the dealer committed to
    std::optional<SecretBlock> forged;  // adversary's substitute target, if any
    RevealPayload payload{PolySig{}};   // what INT put on the wire at reveal
    std::vector<Vote> votes;            // by verifier id (derived votes in one-round mode)
    DealerState dealer;
    IntermediaryState intermediary;
    std::vector<VerifierState> verifiers;
};

// ---------------------------------------------------------------------------
// Session execution.

namespace detail_sim {

struct Recorder {
    Transcript& tr;

    void priv(PhaseCost& phase, unsigned round, int from, int to, Bytes bytes,
              std::uint64_t bits) {
        phase.private_bits += bits;
        tr.records.push_back({round, party_name(from), false, party_name(to), std::move(bytes)});
    }

    void bcast(PhaseCost& phase, unsigned round, int from, Bytes bytes, std::uint64_t bits) {
        phase.broadcast_bits += bits;
        tr.records.push_back({round, party_name(from), true, "all", std::move(bytes)});
    }
};

inline bool int_side(Strategy s) {
    return s == Strategy::ForgingINT || s == Strategy::GuessingINT ||
           s == Strategy::RushingINTOneRound;
}

inline bool dealer_side(Strategy s) {
    return s == Strategy::InconsistentDealer || s == Strategy::DGuessingDealer;
}

// S' = S + delta with delta[0] forced nonzero, so the forged block always
// differs from the dealt one.
inline SecretBlock shifted_block(const SecretBlock& s, const FieldParams& f, Rng& rng) {
    SecretBlock out = s;
    out.values[0] = out.values[0] + f.sample_nonzero(rng);
    for (std::size_t i = 1; i < out.values.size(); ++i)
        out.values[i] = out.values[i] + f.sample(rng);
    return out;
}

// F' = F + c * (x + alpha_hat): agrees with F at exactly alpha_hat, which is
// the sharpest realization of a one-point guess.
inline Poly guess_perturbation(const Poly& F, const FieldParams& f, Rng& rng) {
    FieldElement alpha_hat = f.sample_nonzero(rng);
    FieldElement c = f.sample_nonzero(rng);
    Poly out = F;
    out.coeffs[0] = out.coeffs[0] + c * alpha_hat;
    out.coeffs[1] = out.coeffs[1] + c;
    return out;
}

// Corrupted-dealer fabrication: honest verifier i receives v' = v + delta_i
// and r' = r + dhat_i * delta_i, which passes the dealer's own masking
// relation only under challenge d = dhat_i. The dhat_i are pairwise distinct
// so at most one honest verifier can end up rejecting at reveal.
inline void fabricate_triples(const SessionConfig& cfg, GenOutput& gen, Rng& rng) {
    const FieldParams& f = cfg.params.field;
    std::vector<std::uint64_t> used;
    for (unsigned i = 0; i < cfg.params.n; ++i) {
        if (cfg.is_corrupt_verifier(i)) continue;
        if (used.size() >= f.order_minus_one())
            throw ConfigError("field too small for distinct challenge guesses");
        FieldElement dhat = f.sample_nonzero(rng);
        while (std::find(used.begin(), used.end(), dhat.value) != used.end())
            dhat = f.sample_nonzero(rng);
        used.push_back(dhat.value);
        FieldElement delta = f.sample_nonzero(rng);
        GenToVerifier& m = gen.to_verifiers[i];
        m.v = m.v + delta;
        m.r = m.r + dhat * delta;
        gen.dealer.triples[i] = VerificationTriple{m.alpha, m.v, m.r};
    }
}

}  // namespace detail_sim

// Runs one full Gen/Ver/Reveal session under the configured corruption.
//
// RNG draw order (the determinism contract): the dealt block S; gen_dealer's
// draws; dealer fabrication (per honest verifier: dhat then delta); INT's
// challenge d; INT forgery draws; corrupted verifiers' published-triple
// points (one-round mode, ascending id).
inline SessionOutcome run_session(const SessionConfig& cfg) {
    cfg.validate();
    const ProtocolParams& p = cfg.params;
    const FieldParams& f = p.field;
    Rng rng(cfg.seed);

    SessionOutcome out;
    out.config = cfg;
    Transcript& tr = out.transcript;
    tr.config_echo = cfg.echo();
    detail_sim::Recorder rec{tr};

    if (cfg.reveal_mode == RevealMode::OneRound && cfg.rushing)
        tr.flags.push_back("demo:rushing-oneround-forgery");

    // --- Gen (round 1) ------------------------------------------------------
    SecretBlock S;
    for (unsigned i = 0; i < p.ell; ++i) S.values.push_back(f.sample(rng));
    out.dealt = S;

    GenOutput gen = gen_dealer(p, S, rng);
    if (cfg.corrupt_dealer && detail_sim::dealer_side(cfg.strategy))
        detail_sim::fabricate_triples(cfg, gen, rng);

    rec.priv(tr.ledger.gen, 1, -2, -1, encode(gen.to_int), semantic_bits(gen.to_int));
    for (unsigned i = 0; i < p.n; ++i)
        rec.priv(tr.ledger.gen, 1, -2, static_cast<int>(i), encode(gen.to_verifiers[i]),
                 semantic_bits(gen.to_verifiers[i]));
    tr.ledger.gen.rounds = 1;

    out.dealer = gen.dealer;
    out.intermediary = IntermediaryState(p, gen.to_int);
    out.verifiers.clear();
    for (unsigned i = 0; i < p.n; ++i) out.verifiers.emplace_back(p, gen.to_verifiers[i]);

    // --- Ver round 1 (round 2): INT broadcasts the challenge ----------------
    VerChallenge ch = ver_round1_int(out.intermediary, rng);
    rec.bcast(tr.ledger.ver, 2, -1, encode(ch), semantic_bits(ch));
    VerChallenge norm = normalize_challenge(p, ch);
    for (auto& vs : out.verifiers) vs.observe_challenge(norm);

    // --- Ver round 2 (round 3): dealer stays silent or goes public ----------
    std::optional<DealerReveal> dealer_msg;
    if (cfg.corrupt_dealer && detail_sim::dealer_side(cfg.strategy)) {
        // The cheating dealer must stay silent: broadcasting would hand the
        // verifiers the true block and void the fabrication.
    } else {
        dealer_msg = ver_round2_dealer(out.dealer, ch);
    }
    if (dealer_msg) {
        rec.bcast(tr.ledger.ver, 3, -2, encode(*dealer_msg), semantic_bits(*dealer_msg));
        observe_dealer_broadcast(out.intermediary, dealer_msg->S);
        for (auto& vs : out.verifiers) vs.observe_dealer_broadcast(dealer_msg->S);
    }
    tr.ledger.ver.rounds = 2;

    // --- Reveal --------------------------------------------------------------
    ICSignature honest_sig = finalize_sig_int(out.intermediary);
    RevealPayload payload = reveal_round1_int(honest_sig);

    if (cfg.corrupt_int && cfg.strategy == Strategy::ForgingINT) {
        SecretBlock target = detail_sim::shifted_block(S, f, rng);
        payload = RevealPayload{PolySig{random_with_prefix(target.values, p.t, rng)}};
        out.forged = target;
    } else if (cfg.corrupt_int && cfg.strategy == Strategy::GuessingINT) {
        Poly perturbed = detail_sim::guess_perturbation(out.intermediary.F, f, rng);
        payload = RevealPayload{PolySig{perturbed}};
        out.forged = SecretBlock{extract_secrets(perturbed, p.ell)};
    }

    if (cfg.reveal_mode == RevealMode::TwoRound) {
        rec.bcast(tr.ledger.reveal, 4, -1, encode(payload), semantic_bits(payload));
        RevealPayload norm_payload = normalize_payload(p, payload);

        std::vector<Vote> votes;
        for (unsigned i = 0; i < p.n; ++i) {
            Vote v;
            if (cfg.is_corrupt_verifier(i) && detail_sim::int_side(cfg.strategy))
                v = Vote::Accept;
            else if (cfg.is_corrupt_verifier(i) && detail_sim::dealer_side(cfg.strategy))
                v = Vote::Reject;
            else
                v = reveal_round2_verifier(out.verifiers[i], norm_payload);
            votes.push_back(v);
        }
        for (unsigned i = 0; i < p.n; ++i)
            rec.bcast(tr.ledger.reveal, 5, static_cast<int>(i), encode(votes[i]),
                      semantic_bits(votes[i]));
        tr.ledger.reveal.rounds = 2;
        out.votes = votes;
        tr.verdict = tally(p, votes, payload);
    } else {
        // One-round reveal: payload and triples land in the same round.
        // Honest parties commit first; a rushing adversary reads their
        // messages before emitting its own, a non-rushing one sees nothing.
        std::vector<PublishedTriple> triples(p.n, PublishedTriple{f.zero(), f.zero(), f.zero()});
        std::vector<PublishedTriple> honest_view;
        for (unsigned i = 0; i < p.n; ++i) {
            if (cfg.is_corrupt_verifier(i)) continue;
            const VerifierState& vs = out.verifiers[i];
            triples[i] = PublishedTriple{vs.alpha, vs.v, vs.r};
            honest_view.push_back(triples[i]);
        }

        if (cfg.corrupt_int && cfg.strategy == Strategy::RushingINTOneRound) {
            SecretBlock target = detail_sim::shifted_block(S, f, rng);
            out.forged = target;
            bool built = false;
            if (cfg.rushing) {
                std::vector<std::pair<FieldElement, FieldElement>> pts;
                for (const auto& ht : honest_view) {
                    if (pts.size() == p.t + 1) break;
                    pts.emplace_back(ht.alpha, ht.v);
                }
                bool degenerate = false;
                for (std::size_t a = 0; a < pts.size() && !degenerate; ++a)
                    for (std::size_t b = a + 1; b < pts.size(); ++b)
                        if (pts[a].first == pts[b].first) {
                            degenerate = true;
                            break;
                        }
                if (!degenerate) {
                    try {
                        Poly forged_poly = interpolate(f, pts, p.poly_len(), target.values);
                        payload = RevealPayload{PolySig{forged_poly}};
                        tr.flags.push_back("attack:interpolated");
                        built = true;
                    } catch (const SingularSystemError&) {
                    }
                }
                if (!built) tr.flags.push_back("attack:singular");
            } else {
                tr.flags.push_back("attack:blind");
            }
            if (!built) payload = RevealPayload{PolySig{random_with_prefix(target.values, p.t, rng)}};
        }

        RevealPayload norm_payload = normalize_payload(p, payload);
        for (unsigned i = 0; i < p.n; ++i) {
            if (!cfg.is_corrupt_verifier(i)) continue;
            if (detail_sim::int_side(cfg.strategy)) {
                // Publish a triple consistent with the forged payload so the
                // public predicate accepts it.
                FieldElement a = f.sample_nonzero(rng);
                const Poly& fp = std::get<PolySig>(norm_payload.sig).F;
                FieldElement v = eval(fp, a);
                FieldElement r = eval(out.intermediary.B, a) + out.intermediary.d * v;
                triples[i] = PublishedTriple{a, v, r};
            } else if (cfg.strategy == Strategy::HonestAll) {
                const VerifierState& vs = out.verifiers[i];
                triples[i] = PublishedTriple{vs.alpha, vs.v, vs.r};
            }
            // Dealer-side strategies leave the zero triple (worthless junk).
        }

        // Emission order: honest INT/verifiers first, corrupted parties after.
        unsigned round = 4;
        if (!cfg.corrupt_int)
            rec.bcast(tr.ledger.reveal, round, -1, encode(payload), semantic_bits(payload));
        for (unsigned i = 0; i < p.n; ++i)
            if (!cfg.is_corrupt_verifier(i))
                rec.bcast(tr.ledger.reveal, round, static_cast<int>(i), encode(triples[i]),
                          semantic_bits(triples[i]));
        if (cfg.corrupt_int)
            rec.bcast(tr.ledger.reveal, round, -1, encode(payload), semantic_bits(payload));
        for (unsigned i = 0; i < p.n; ++i)
            if (cfg.is_corrupt_verifier(i))
                rec.bcast(tr.ledger.reveal, round, static_cast<int>(i), encode(triples[i]),
                          semantic_bits(triples[i]));
        tr.ledger.reveal.rounds = 1;

        const IntermediaryState& is = out.intermediary;
        std::optional<SecretBlock> db =
            dealer_msg ? std::optional<SecretBlock>(dealer_msg->S) : std::nullopt;
        std::vector<Vote> votes;
        for (const auto& trp : triples)
            votes.push_back(evaluate_published_triple(p, is.d, is.B, db, norm_payload, trp));
        out.votes = votes;
        tr.verdict = tally(p, votes, payload);
    }

    out.payload = payload;
    return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimation.

inline constexpr double kWilsonZ99 = 2.3263478740408408;  // one-sided 99%

struct WilsonInterval {
    double low = 0.0, high = 1.0;
};

inline WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(hits) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = phat + z2 / (2.0 * n);
    double rad = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    WilsonInterval w;
    w.low = std::max(0.0, (center - rad) / denom);
    w.high = std::min(1.0, (center + rad) / denom);
    return w;
}

struct RateEstimate {
    std::uint64_t hits = 0;
    std::uint64_t counted = 0;   // trials entering the denominator
    std::uint64_t excluded = 0;  // trials the probe declined to count
    double rate() const { return counted ? static_cast<double>(hits) / counted : 0.0; }
    WilsonInterval wilson(double z = kWilsonZ99) const { return wilson_interval(hits, counted, z); }
};

// Runs `trial(seed0 + k)` for k in [0, trials); nullopt excludes the trial
// from the denominator. Chunked across threads with order-independent
// reduction, so the result is identical for any thread count.
inline RateEstimate run_trials(std::uint64_t trials, std::uint64_t seed0, unsigned threads,
                               const std::function<std::optional<bool>(std::uint64_t)>& trial) {
    if (threads <= 1) {
        RateEstimate est;
        for (std::uint64_t k = 0; k < trials; ++k) {
            std::optional<bool> r = trial(seed0 + k);
            if (!r)
                ++est.excluded;
            else {
                ++est.counted;
                if (*r) ++est.hits;
            }
        }
        return est;
    }
    std::vector<RateEstimate> parts(threads);
    std::vector<std::thread> workers;
    std::uint64_t chunk = (trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::uint64_t lo = w * chunk;
        std::uint64_t hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi, w] {
            for (std::uint64_t k = lo; k < hi; ++k) {
                std::optional<bool> r = trial(seed0 + k);
                if (!r)
                    ++parts[w].excluded;
                else {
                    ++parts[w].counted;
                    if (*r) ++parts[w].hits;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    RateEstimate est;
    for (const auto& part : parts) {
        est.hits += part.hits;
        est.counted += part.counted;
        est.excluded += part.excluded;
    }
    return est;
}

using SessionProbe = std::function<std::optional<bool>(const SessionOutcome&)>;

inline RateEstimate montecarlo(const SessionConfig& base, std::uint64_t trials,
                               std::uint64_t seed0, const SessionProbe& probe,
                               unsigned threads = 1) {
    base.validate();
    return run_trials(trials, seed0, threads, [&](std::uint64_t seed) {
        SessionConfig cfg = base;
        cfg.seed = seed;
        return probe(run_session(cfg));
    });
}

inline std::optional<bool> probe_accepted(const SessionOutcome& o) {
    return o.transcript.verdict.accepted;
}

inline std::optional<bool> probe_rejected(const SessionOutcome& o) {
    return !o.transcript.verdict.accepted;
}

// Success = the forged block itself was accepted; trials whose interpolation
// system degenerated are excluded from the denominator.
inline std::optional<bool> probe_forgery_success(const SessionOutcome& o) {
    for (const auto& f : o.transcript.flags)
        if (f == "attack:singular") return std::nullopt;
    if (!o.forged) return false;
    return o.transcript.verdict.accepted && o.transcript.verdict.secrets == *o.forged;
}

// ---------------------------------------------------------------------------
// Exhaustive secrecy audit.

struct AdversaryView {
    FieldElement d;
    Poly B;
    std::vector<VerificationTriple> triples;  // corrupted plus any leaked honest ones
};

struct SecrecyHistogram {
    std::vector<std::uint64_t> counts;  // indexed by packed secret block
    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
    bool uniform() const {
        if (counts.empty() || counts[0] == 0) return false;
        for (auto c : counts)
            if (c != counts[0]) return false;
        return true;
    }
};

// Builds the view of a passive adversary sitting on the configured corrupted
// verifiers, optionally extended with leaked honest triples (1-based ids).
inline AdversaryView adversary_view(const SessionOutcome& o,
                                    const std::vector<unsigned>& leaked_honest = {}) {
    AdversaryView view;
    view.d = o.intermediary.d;
    view.B = o.intermediary.B;
    for (unsigned i = 0; i < o.config.params.n; ++i)
        if (o.config.is_corrupt_verifier(i)) {
            const VerifierState& vs = o.verifiers[i];
            view.triples.push_back(VerificationTriple{vs.alpha, vs.v, vs.r});
        }
    for (unsigned id : leaked_honest) {
        if (id < 1 || id > o.config.params.n) throw ConfigError("leaked verifier id out of range");
        if (o.config.is_corrupt_verifier(id - 1))
            throw ConfigError("leaked verifier is already corrupted");
        const VerifierState& vs = o.verifiers[id - 1];
        view.triples.push_back(VerificationTriple{vs.alpha, vs.v, vs.r});
    }
    return view;
}

// Enumerates every candidate polynomial F and counts, per secret block, the
// candidates consistent with the view. The masking polynomial is fully
// determined as R = B + d*F, so consistency is: F(alpha_j) = v_j for every
// triple, plus the F-independent relation B(alpha_j) = d*v_j + r_j (checked
// once up front). The enumeration walks an odometer one coefficient step at a
// time and updates each F(alpha_j) incrementally.
inline SecrecyHistogram secrecy_audit(const ProtocolParams& p, const AdversaryView& view) {
    const FieldParams& f = p.field;
    const std::size_t L = p.poly_len();
    if (f.kappa > 5 || p.ell * f.kappa > 12 || f.kappa * L > 26)
        throw ConfigError("secrecy audit infeasible for these parameters");
    if (view.B.len() != L || view.B.field() != f)
        throw ConfigError("view challenge polynomial has the wrong shape");

    SecrecyHistogram hist;
    hist.counts.assign(std::size_t{1} << (p.ell * f.kappa), 0);

    // F-independent consistency of the view itself.
    for (const auto& tr : view.triples)
        if (eval(view.B, tr.alpha) != view.d * tr.v + tr.r) return hist;  // empty support

    const std::size_t m = view.triples.size();
    std::vector<std::vector<std::uint64_t>> pw(m, std::vector<std::uint64_t>(L));
    for (std::size_t j = 0; j < m; ++j) {
        FieldElement acc = f.one();
        for (std::size_t i = 0; i < L; ++i) {
            pw[j][i] = acc.value;
            acc = acc * view.triples[j].alpha;
        }
    }

    std::vector<std::uint64_t> digit(L, 0);
    std::vector<std::uint64_t> vals(m, 0);  // F(alpha_j) for the current candidate
    std::uint64_t index = 0;                // packed secret block (low ell digits)
    const std::uint64_t mask = f.mask();
    const unsigned kappa = f.kappa;
    const std::uint64_t total = std::uint64_t{1} << (kappa * L);

    for (std::uint64_t step = 0;; ++step) {
        bool ok = true;
        for (std::size_t j = 0; j < m; ++j)
            if (vals[j] != view.triples[j].v.value) {
                ok = false;
                break;
            }
        if (ok) ++hist.counts[index];
        if (step + 1 == total) break;

        for (std::size_t i = 0; i < L; ++i) {
            std::uint64_t prev = digit[i];
            digit[i] = (prev + 1) & mask;
            std::uint64_t delta = prev ^ digit[i];
            if (i < p.ell) index ^= delta << (kappa * i);
            for (std::size_t j = 0; j < m; ++j)
                vals[j] ^= i == 0 ? delta : detail::gf_mul(delta, pw[j][i], kappa, f.taps);
            if (digit[i] != 0) break;  // no carry
        }
    }
    return hist;
}

// ---------------------------------------------------------------------------
// Linear sessions: q Gen/Ver instances from one dealer against one verifier
// point set, combined into a single reveal.

struct LinearOptions {
    unsigned q = 2;
    std::vector<std::uint64_t> offset_values;     // empty, or ell raw field values
    std::vector<unsigned> broadcast_instances;    // 0-based: dealer publishes S_j during Ver
    std::vector<unsigned> cheat_instances = {0};  // 0-based: dealer-side strategies strike here
};

struct LinearOutcome {
    SessionConfig config;
    Transcript transcript;
    std::vector<SecretBlock> dealt;     // S_j per instance
    SecretBlock expected;               // sum of dealt blocks plus any offset
    std::optional<SecretBlock> forged;  // adversary's substitute target, if any
    RevealPayload payload{PolySig{}};
    std::vector<Vote> votes;
};

// RNG draw order: shared alphas; per instance j (ascending): S_j, F_j's
// masking coefficients, R_j, fabrication draws, d_j; then INT forgery draws.
inline LinearOutcome run_linear_session(const SessionConfig& cfg, const LinearOptions& opt) {
    cfg.validate();
    if (cfg.strategy == Strategy::RushingINTOneRound)
        throw ConfigError("rushing demo is not defined for linear sessions");
    if (cfg.reveal_mode != RevealMode::TwoRound)
        throw ConfigError("linear sessions use the two-round reveal");
    if (opt.q < 1) throw ConfigError("linear session needs at least one instance");
    const ProtocolParams& p = cfg.params;
    const FieldParams& f = p.field;
    if (!opt.offset_values.empty() && opt.offset_values.size() != p.ell)
        throw ConfigError("offset size differs from ell");
    for (unsigned j : opt.broadcast_instances)
        if (j >= opt.q) throw ConfigError("broadcast instance index out of range");
    for (unsigned j : opt.cheat_instances)
        if (j >= opt.q) throw ConfigError("cheat instance index out of range");
    if (!opt.broadcast_instances.empty() && cfg.corrupt_dealer)
        throw ConfigError("voluntary dealer broadcast needs an honest dealer");

    auto contains = [](const std::vector<unsigned>& xs, unsigned x) {
        return std::find(xs.begin(), xs.end(), x) != xs.end();
    };

    Rng rng(cfg.seed);
    LinearOutcome out;
    out.config = cfg;
    Transcript& tr = out.transcript;
    tr.config_echo = cfg.echo();
    tr.flags.push_back("instances=" + std::to_string(opt.q));
    detail_sim::Recorder rec{tr};

    std::vector<FieldElement> alphas;
    for (unsigned i = 0; i < p.n; ++i) alphas.push_back(f.sample_nonzero(rng));

    std::vector<LinearInstance> instances;
    SecretBlock expected{std::vector<FieldElement>(p.ell, f.zero())};

    for (unsigned j = 0; j < opt.q; ++j) {
        const unsigned base_round = 3 * j;
        SecretBlock S;
        for (unsigned i = 0; i < p.ell; ++i) S.values.push_back(f.sample(rng));
        out.dealt.push_back(S);
        expected = block_add(expected, S);

        Poly F = random_with_prefix(S.values, p.t, rng);
        Poly R = random_poly(f, p.poly_len(), rng);
        GenToInt to_int{F, R};
        std::vector<GenToVerifier> to_ver;
        for (unsigned i = 0; i < p.n; ++i)
            to_ver.push_back(GenToVerifier{alphas[i], eval(F, alphas[i]), eval(R, alphas[i])});

        bool cheat = cfg.corrupt_dealer && detail_sim::dealer_side(cfg.strategy) &&
                     contains(opt.cheat_instances, j);
        if (cheat) {
            std::vector<std::uint64_t> used;
            for (unsigned i = 0; i < p.n; ++i) {
                if (cfg.is_corrupt_verifier(i)) continue;
                if (used.size() >= f.order_minus_one())
                    throw ConfigError("field too small for distinct challenge guesses");
                FieldElement dhat = f.sample_nonzero(rng);
                while (std::find(used.begin(), used.end(), dhat.value) != used.end())
                    dhat = f.sample_nonzero(rng);
                used.push_back(dhat.value);
                FieldElement delta = f.sample_nonzero(rng);
                to_ver[i].v = to_ver[i].v + delta;
                to_ver[i].r = to_ver[i].r + dhat * delta;
            }
        }

        rec.priv(tr.ledger.gen, base_round + 1, -2, -1, encode(to_int), semantic_bits(to_int));
        for (unsigned i = 0; i < p.n; ++i)
            rec.priv(tr.ledger.gen, base_round + 1, -2, static_cast<int>(i), encode(to_ver[i]),
                     semantic_bits(to_ver[i]));

        FieldElement d = f.sample_nonzero(rng);
        Poly B = linear_combine(d, F, R);
        VerChallenge ch{d, B};
        rec.bcast(tr.ledger.ver, base_round + 2, -1, encode(ch), semantic_bits(ch));

        // An honest dealer finds its own triples consistent and stays silent
        // unless told to publish this instance; a cheating dealer must stay
        // silent or void its own fabrication.
        std::optional<SecretBlock> db;
        if (!cfg.corrupt_dealer && contains(opt.broadcast_instances, j)) {
            db = S;
            DealerReveal msg{S};
            rec.bcast(tr.ledger.ver, base_round + 3, -2, encode(msg), semantic_bits(msg));
            tr.flags.push_back("broadcast_instance=" + std::to_string(j));
        }

        LinearInstance inst;
        inst.sig = db ? ICSignature{PublicSig{S}} : ICSignature{PolySig{F}};
        inst.d = d;
        inst.B = B;
        inst.dealer_broadcast = db;
        for (unsigned i = 0; i < p.n; ++i)
            inst.triples.push_back(VerificationTriple{to_ver[i].alpha, to_ver[i].v, to_ver[i].r});
        instances.push_back(std::move(inst));
    }
    tr.ledger.gen.rounds = 1;
    tr.ledger.ver.rounds = 2;

    // A public offset behaves exactly like one more dealer-broadcast
    // instance whose block is the offset, so it joins the bundle as one.
    if (!opt.offset_values.empty()) {
        SecretBlock a;
        for (std::uint64_t v : opt.offset_values) a.values.push_back(f.element(v));
        expected = block_add(expected, a);
        LinearInstance inst;
        inst.sig = PublicSig{a};
        inst.d = f.one();
        inst.B = zero_poly(f, p.poly_len());
        inst.dealer_broadcast = a;
        for (unsigned i = 0; i < p.n; ++i)
            inst.triples.push_back(VerificationTriple{alphas[i], f.zero(), f.zero()});
        instances.push_back(std::move(inst));
        Bytes b;
        put_block(b, a);
        tr.flags.push_back("offset=" + to_hex(b));
    }
    out.expected = expected;

    SignatureBundle bundle = SignatureBundle::make(p, std::move(instances));
    ICSignature combined = combine_signatures(bundle);
    RevealPayload payload{combined};

    if (cfg.corrupt_int && cfg.strategy == Strategy::ForgingINT) {
        SecretBlock target = detail_sim::shifted_block(expected, f, rng);
        payload = RevealPayload{PolySig{random_with_prefix(target.values, p.t, rng)}};
        out.forged = target;
    } else if (cfg.corrupt_int && cfg.strategy == Strategy::GuessingINT) {
        Poly perturbed = detail_sim::guess_perturbation(std::get<PolySig>(combined).F, f, rng);
        payload = RevealPayload{PolySig{perturbed}};
        out.forged = SecretBlock{extract_secrets(perturbed, p.ell)};
    }

    const unsigned reveal_round = 3 * opt.q + 1;
    rec.bcast(tr.ledger.reveal, reveal_round, -1, encode(payload), semantic_bits(payload));
    RevealPayload norm_payload = normalize_payload(p, payload);

    std::vector<Vote> votes;
    for (unsigned i = 0; i < p.n; ++i) {
        Vote v;
        if (cfg.is_corrupt_verifier(i) && detail_sim::int_side(cfg.strategy))
            v = Vote::Accept;
        else if (cfg.is_corrupt_verifier(i) && detail_sim::dealer_side(cfg.strategy))
            v = Vote::Reject;
        else
            v = reveal_combined_verifier(combined_view(bundle, i), norm_payload);
        votes.push_back(v);
    }
    for (unsigned i = 0; i < p.n; ++i)
        rec.bcast(tr.ledger.reveal, reveal_round + 1, static_cast<int>(i), encode(votes[i]),
                  semantic_bits(votes[i]));
    tr.ledger.reveal.rounds = 2;

    out.votes = votes;
    out.payload = payload;
    tr.verdict = tally(p, votes, payload);
    return out;
}

using LinearProbe = std::function<std::optional<bool>(const LinearOutcome&)>;

inline RateEstimate montecarlo_linear(const SessionConfig& base, const LinearOptions& opt,
                                      std::uint64_t trials, std::uint64_t seed0,
                                      const LinearProbe& probe, unsigned threads = 1) {
    return run_trials(trials, seed0, threads, [&](std::uint64_t seed) {
        SessionConfig cfg = base;
        cfg.seed = seed;
        return probe(run_linear_session(cfg, opt));
    });
}

// ---------------------------------------------------------------------------
// Communication-cost report.

struct ComplexityReport {
    ProtocolParams params;
    RevealMode mode = RevealMode::TwoRound;
    CostLedger analytic, measured;
    bool match() const { return analytic == measured; }
};

// Closed forms, counting field elements at kappa bits and votes at one bit:
//   Gen private:      (2(ell+t+1) + 3n) * kappa
//   Ver broadcast:    (1 + (ell+t+1)) * kappa   (honest run: dealer silent)
//   Reveal broadcast: (ell+t+1)*kappa + n        (two-round)
//                     (ell+t+1)*kappa + 3n*kappa (one-round)
inline CostLedger analytic_costs(const ProtocolParams& p, RevealMode mode) {
    const std::uint64_t L = p.poly_len();
    const std::uint64_t k = p.field.kappa;
    CostLedger c;
    c.gen = {(2 * L + 3 * p.n) * k, 0, 1};
    c.ver = {0, (1 + L) * k, 2};
    if (mode == RevealMode::TwoRound)
        c.reveal = {0, L * k + p.n, 2};
    else
        c.reveal = {0, L * k + 3 * p.n * k, 1};
    return c;
}

inline ComplexityReport complexity_report(const ProtocolParams& p, RevealMode mode,
                                          std::uint64_t seed = 1) {
    SessionConfig cfg;
    cfg.params = p;
    cfg.reveal_mode = mode;
    cfg.seed = seed;
    ComplexityReport rep;
    rep.params = p;
    rep.mode = mode;
    rep.analytic = analytic_costs(p, mode);
    rep.measured = run_session(cfg).transcript.ledger;
    return rep;
}

}  // namespace mvicp
