// Acceptance gate: seven checks, one PASS/FAIL line each, exact or
// statistical at the stated tolerance. Statistical checks run on the
// pre-registered seed stream starting at 0. Exit code 0 means every check
// either passed or failed in the single documented expected way (see the
// secrecy check's leak clause); anything else exits 1.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <mvicp/simnet.hpp>

using namespace mvicp;

namespace {

struct Gate {
    int unexpected = 0;
    int expected_red = 0;
    int passed = 0;

    void criterion(int idx, const char* name, bool pass, const std::string& detail,
                   bool documented_failure = false) {
        std::cout << "criterion " << idx << ' ' << (pass ? "PASS" : "FAIL") << "  " << name
                  << ": " << detail << '\n';
        if (pass)
            ++passed;
        else if (documented_failure)
            ++expected_red;
        else
            ++unexpected;
    }

    void info(const std::string& s) { std::cout << "    info: " << s << '\n'; }
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

SessionConfig stat_config(Strategy s, unsigned ell = 4) {
    SessionConfig cfg;
    cfg.params = ProtocolParams::make(3, ell, FieldParams::from_kappa(8));
    cfg.strategy = s;
    const StrategyInfo& info = strategy_info(s);
    cfg.corrupt_int = info.corrupts_int;
    cfg.corrupt_dealer = info.corrupts_dealer;
    if (info.needs_oneround) {
        cfg.reveal_mode = RevealMode::OneRound;
        cfg.rushing = true;
    }
    return cfg;
}

// 1. Completeness: all-honest sessions across kappa/n/ell/reveal-mode always
//    accept the dealt block and the dealer never goes public.
void criterion1(Gate& gate) {
    const unsigned kappas[3] = {4, 8, 16};
    const unsigned ns[3] = {3, 5, 7};
    std::uint64_t bad = 0;
    for (std::uint64_t k = 0; k < 10000; ++k) {
        SessionConfig cfg;
        cfg.params = ProtocolParams::make(ns[(k / 3) % 3], 1 + k % 8,
                                          FieldParams::from_kappa(kappas[k % 3]));
        cfg.reveal_mode = k % 2 ? RevealMode::OneRound : RevealMode::TwoRound;
        cfg.seed = k;
        SessionOutcome o = run_session(cfg);
        bool ok = o.transcript.verdict.accepted && o.transcript.verdict.secrets == o.dealt &&
                  !o.dealer.broadcast_secrets && o.transcript.flags.empty();
        for (Vote v : o.votes) ok = ok && v == Vote::Accept;
        if (!ok) ++bad;
    }
    gate.criterion(1, "completeness", bad == 0,
                   std::to_string(10000 - bad) + "/10000 honest sessions accepted the dealt "
                                                 "block unanimously with a silent dealer");
}

// 2. Unforgeability: the point-guessing intermediary's acceptance rate sits
//    under epsilon with 99% confidence (Wilson upper bound), and the rate
//    itself lies within 3 sigma of the theoretical guess probability
//    (t+1)/(2^kappa-1). Checking the Wilson bound against the 3-sigma cap
//    instead would stack the interval's own 2.33-sigma radius on top of the
//    cap and reject a correct implementation about one run in four.
void criterion2(Gate& gate) {
    SessionConfig cfg = stat_config(Strategy::GuessingINT);
    cfg.corrupt_verifiers = {3};
    const std::uint64_t N = 100000;
    RateEstimate est = montecarlo(cfg, N, 0, probe_accepted);
    double eps = cfg.params.epsilon().value();
    double p0 = 2.0 / 255.0;  // (t+1)/(2^kappa - 1)
    double sigma = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(N));
    double cap = p0 + 3.0 * sigma;
    bool pass = est.wilson().high <= eps && est.rate() <= cap;
    gate.criterion(2, "unforgeability", pass,
                   "guessing-int accepted " + std::to_string(est.hits) + "/" + std::to_string(N) +
                       ", wilson99_high=" + fmt(est.wilson().high) + " <= eps=" + fmt(eps) +
                       "; rate=" + fmt(est.rate()) + " within 3*sigma of (t+1)/(2^kappa-1) (cap " +
                       fmt(cap) + ")");
}

// 3. Non-repudiation: a challenge-guessing dealer cannot push the rejection
//    rate past epsilon, and the inconsistent-dealer variant is always
//    accepted through the exoneration clause.
void criterion3(Gate& gate) {
    SessionConfig cfg = stat_config(Strategy::DGuessingDealer);
    cfg.corrupt_verifiers = {3};
    const std::uint64_t N = 100000;
    RateEstimate est = montecarlo(cfg, N, 0, probe_rejected);
    double eps = cfg.params.epsilon().value();
    bool reject_ok = est.wilson().high <= eps;

    std::uint64_t accepted = 0, exonerated = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        SessionConfig one = stat_config(Strategy::InconsistentDealer);
        one.seed = seed;
        SessionOutcome o = run_session(one);
        if (o.transcript.verdict.accepted) ++accepted;
        const Poly& fp = std::get<PolySig>(o.payload.sig).F;
        bool c1_never = true;  // every Accept vote must come from the exoneration clause
        for (const auto& vs : o.verifiers) c1_never = c1_never && eval(fp, vs.alpha) != vs.v;
        if (c1_never) ++exonerated;
    }
    bool pass = reject_ok && accepted == 10000 && exonerated == 10000;
    gate.criterion(3, "non-repudiation", pass,
                   "d-guessing rejected " + std::to_string(est.hits) + "/" + std::to_string(N) +
                       ", wilson99_high=" + fmt(est.wilson().high) + " <= eps=" + fmt(eps) +
                       "; inconsistent-dealer accepted " + std::to_string(accepted) +
                       "/10000, all via the failed-consistency clause (" +
                       std::to_string(exonerated) + "/10000)");
}

// 4. Secrecy: the corrupted verifier's view keeps every secret block equally
//    likely. The second clause demands non-uniformity after one extra leaked
//    triple; with t = 1 that view holds t+1 = 2 points, which still pins
//    nothing, so the clause fails and the histogram stays uniform. That
//    failure shape is the documented expected one; t+2 points do break
//    uniformity, shown in the info line.
void criterion4(Gate& gate) {
    unsigned total = 0, base_uniform = 0, leak1_uniform = 0;
    unsigned leak2_distinct = 0, leak2_nonuniform = 0;
    for (unsigned ell : {1u, 2u}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            SessionConfig cfg;
            cfg.params = ProtocolParams::make(3, ell, FieldParams::from_kappa(4));
            cfg.corrupt_verifiers = {1};
            cfg.seed = seed;
            SessionOutcome o = run_session(cfg);
            ++total;
            if (secrecy_audit(cfg.params, adversary_view(o)).uniform()) ++base_uniform;
            if (secrecy_audit(cfg.params, adversary_view(o, {2})).uniform()) ++leak1_uniform;
            const auto& vs = o.verifiers;
            if (vs[0].alpha != vs[1].alpha && vs[0].alpha != vs[2].alpha &&
                vs[1].alpha != vs[2].alpha) {
                ++leak2_distinct;
                if (!secrecy_audit(cfg.params, adversary_view(o, {2, 3})).uniform())
                    ++leak2_nonuniform;
            }
        }
    }
    bool base_ok = base_uniform == total;
    bool pass = base_ok && leak1_uniform == 0;
    bool documented = base_ok && leak1_uniform == total;
    gate.criterion(4, "secrecy", pass,
                   "corrupted view uniform in " + std::to_string(base_uniform) + "/" +
                       std::to_string(total) + " sessions; one-leak views demanded non-uniform "
                                               "but stayed uniform in " +
                       std::to_string(leak1_uniform) + "/" + std::to_string(total),
                   documented);
    gate.info("a one-triple leak gives the adversary t+1 = 2 points of a polynomial with t+1 "
              "free masking coefficients, so every block stays equally likely: uniformity here "
              "is forced, not a defect");
    gate.info("t+2 = 3 points do pin the block: non-uniform in " +
              std::to_string(leak2_nonuniform) + "/" + std::to_string(leak2_distinct) +
              " sessions with pairwise distinct evaluation points");
}

// 5. Complexity: the measured ledger equals the closed forms over a 3x4 grid
//    in both reveal modes, with rounds (1,2,2) and (1,2,1).
void criterion5(Gate& gate) {
    unsigned checked = 0, matched = 0;
    for (unsigned n : {3u, 5u, 7u})
        for (auto [ell, kappa] : std::vector<std::pair<unsigned, unsigned>>{
                 {1, 8}, {2, 8}, {4, 16}, {8, 16}})
            for (RevealMode mode : {RevealMode::TwoRound, RevealMode::OneRound}) {
                ProtocolParams p = ProtocolParams::make(n, ell, FieldParams::from_kappa(kappa));
                ComplexityReport rep = complexity_report(p, mode);
                ++checked;
                bool ok = rep.match() && rep.measured.gen.rounds == 1 &&
                          rep.measured.ver.rounds == 2 &&
                          rep.measured.reveal.rounds ==
                              (mode == RevealMode::TwoRound ? 2u : 1u);
                if (ok) ++matched;
            }
    ProtocolParams ex = ProtocolParams::make(3, 4, FieldParams::from_kappa(16));
    std::uint64_t gen_bits = analytic_costs(ex, RevealMode::TwoRound).gen.private_bits;
    bool pass = matched == checked && gen_bits == 336;
    gate.criterion(5, "complexity", pass,
                   std::to_string(matched) + "/" + std::to_string(checked) +
                       " grid points match the closed forms with rounds (1,2,2)/(1,2,1); "
                       "n=3 ell=4 kappa=16 moves " +
                       std::to_string(gen_bits) + " private bits in Gen");
}

// 6. Linearity: combined signatures recover the block sum exactly, offsets
//    cancel, dealer-broadcast instances lift, and the statistical bounds of
//    checks 2-3 hold against combined signatures too.
void criterion6(Gate& gate) {
    ProtocolParams p = ProtocolParams::make(3, 2, FieldParams::from_kappa(8));
    bool pass = true;
    std::ostringstream detail;

    for (unsigned q : {2u, 5u}) {
        std::uint64_t good = 0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            SessionConfig cfg;
            cfg.params = p;
            cfg.seed = seed;
            LinearOptions opt;
            opt.q = q;
            LinearOutcome o = run_linear_session(cfg, opt);
            if (o.transcript.verdict.accepted && o.transcript.verdict.secrets == o.expected)
                ++good;
        }
        pass = pass && good == 1000;
        detail << "q=" << q << " sum recovery " << good << "/1000; ";
    }

    std::uint64_t zeroed = 0, roundtrip = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SessionConfig cfg;
        cfg.params = p;
        cfg.seed = seed;
        LinearOptions plain;
        plain.q = 1;
        LinearOutcome first = run_linear_session(cfg, plain);
        LinearOptions offset = plain;
        for (const auto& e : first.dealt[0].values) offset.offset_values.push_back(e.value);
        LinearOutcome second = run_linear_session(cfg, offset);
        SecretBlock zero{std::vector<FieldElement>(p.ell, p.field.zero())};
        if (second.transcript.verdict.accepted && second.transcript.verdict.secrets == zero)
            ++zeroed;

        Rng rng(7000 + seed);
        Poly F = random_poly(p.field, p.poly_len(), rng);
        std::vector<FieldElement> a;
        for (unsigned l = 0; l < p.ell; ++l) a.push_back(p.field.sample(rng));
        ICSignature twice = offset_signature(offset_signature(PolySig{F}, a, p), a, p);
        if (std::get<PolySig>(twice).F == F) ++roundtrip;
    }
    pass = pass && zeroed == 100 && roundtrip == 100;
    detail << "offset-by-dealt zeroes " << zeroed << "/100, offset twice is identity "
           << roundtrip << "/100; ";

    std::uint64_t lifted = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        SessionConfig cfg;
        cfg.params = p;
        cfg.seed = seed;
        LinearOptions opt;
        opt.q = 3;
        opt.broadcast_instances = {1};
        LinearOutcome o = run_linear_session(cfg, opt);
        if (o.transcript.verdict.accepted && o.transcript.verdict.secrets == o.expected) ++lifted;
    }
    pass = pass && lifted == 200;
    detail << "broadcast-instance lift " << lifted << "/200; ";

    SessionConfig forge = stat_config(Strategy::GuessingINT);
    forge.corrupt_verifiers = {3};
    LinearOptions q2;
    q2.q = 2;
    double eps = forge.params.epsilon().value();
    RateEstimate f = montecarlo_linear(forge, q2, 20000, 0, [](const LinearOutcome& o) {
        return std::optional<bool>(o.transcript.verdict.accepted);
    });
    pass = pass && f.wilson().high <= eps;
    detail << "combined guessing-int wilson99_high=" << fmt(f.wilson().high) << " <= " << fmt(eps)
           << "; ";

    SessionConfig cheat = stat_config(Strategy::DGuessingDealer);
    cheat.corrupt_verifiers = {3};
    RateEstimate r = montecarlo_linear(cheat, q2, 20000, 0, [](const LinearOutcome& o) {
        return std::optional<bool>(!o.transcript.verdict.accepted);
    });
    pass = pass && r.wilson().high <= eps;
    detail << "combined d-guessing wilson99_high=" << fmt(r.wilson().high) << " <= " << fmt(eps);

    gate.criterion(6, "linearity", pass, detail.str());
}

// 7. One-round necessity demo: with rushing, the interpolated forgery goes
//    through whenever its linear system is regular.
void criterion7(Gate& gate) {
    SessionConfig cfg = stat_config(Strategy::RushingINTOneRound);
    cfg.corrupt_verifiers = {3};
    RateEstimate est = montecarlo(cfg, 10000, 0, probe_forgery_success);
    bool pass = est.counted > 0 && est.rate() >= 0.99;
    gate.criterion(7, "one-round rushing demo", pass,
                   "forged block accepted in " + std::to_string(est.hits) + "/" +
                       std::to_string(est.counted) + " regular trials (rate=" + fmt(est.rate()) +
                       " >= 0.99), " + std::to_string(est.excluded) +
                       " degenerate interpolation systems excluded");
}

}  // namespace

int main() {
    std::cout << "acceptance gate: statistical checks use the pre-registered seed stream 0..\n";
    Gate gate;
    criterion1(gate);
    criterion2(gate);
    criterion3(gate);
    criterion4(gate);
    criterion5(gate);
    criterion6(gate);
    criterion7(gate);
    std::cout << "summary: " << gate.passed << " passed, " << gate.expected_red
              << " failed as documented, " << gate.unexpected << " failed unexpectedly\n";
    return gate.unexpected == 0 ? 0 : 1;
}
