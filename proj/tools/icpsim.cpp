// Command-line front end for the information-checking-protocol simulator.
// Subcommands: run, montecarlo, secrecy, linearity, complexity.
// Exit codes: 0 = ok, 1 = a checked bound or expectation was violated,
// 2 = configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <mvicp/experiments.hpp>

namespace {

mvicp::ErrorBound parse_epsilon(const std::string& s) {
    try {
        auto caret = s.find("2^");
        if (caret != std::string::npos && (caret == 0 || s[caret - 1] == '*')) {
            std::uint64_t m = 1;
            if (caret >= 1 && s[caret - 1] == '*') m = std::stoull(s.substr(0, caret - 1));
            int e = std::stoi(s.substr(caret + 2));
            mvicp::ErrorBound b{m, e};
            b.normalize();
            if (!(b.value() > 0.0 && b.value() < 1.0))
                throw mvicp::ConfigError("epsilon must lie in (0,1)");
            return b;
        }
        return mvicp::ErrorBound::from_double(std::stod(s));
    } catch (const mvicp::ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw mvicp::ConfigError("cannot parse epsilon: " + s);
    }
}

std::string strategy_help() {
    std::string h = "corruption strategy:";
    for (const auto& info : mvicp::strategy_catalog()) {
        h += "\n  ";
        h += info.name;
        h += ": ";
        h += info.summary;
    }
    return h;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mvicp::ConfigError("cannot open output file: " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-verifier information checking protocol simulator"};
    app.set_version_flag("--version", "icpsim 1.0.0");
    app.set_config("--config", "", "key=value config file (long option names as keys)");
    app.fallthrough();
    app.require_subcommand(1);

    unsigned n = 3, ell = 4;
    int t_opt = -1;
    unsigned kappa = 0;
    std::string epsilon;
    std::uint64_t seed = 0;
    bool rushing = false, corrupt_dealer = false, corrupt_int = false;
    unsigned reveal_rounds = 2;
    std::vector<unsigned> corrupt_verifiers;
    std::string strategy_name = "honest";
    std::string out_path;

    app.add_option("--n", n, "verifier count, odd, n = 2t+1")->capture_default_str();
    app.add_option("--t", t_opt, "corruption threshold; must equal (n-1)/2 when given");
    app.add_option("--ell", ell, "secrets per signature")->capture_default_str();
    auto* kopt = app.add_option("--kappa", kappa, "field size exponent (GF(2^kappa))");
    auto* eopt = app.add_option("--epsilon", epsilon,
                                "target error bound, e.g. 0.012 or 2^-8; picks the smallest "
                                "kappa with n*2^-kappa <= epsilon");
    kopt->excludes(eopt);
    eopt->excludes(kopt);
    app.add_option("--seed", seed, "session seed (montecarlo: first trial seed)")
        ->capture_default_str();
    app.add_flag("--rushing", rushing, "allow the one-round rushing forgery demo");
    app.add_option("--reveal-rounds", reveal_rounds, "reveal phase rounds: 2 or 1")
        ->capture_default_str();
    app.add_flag("--corrupt-dealer", corrupt_dealer, "corrupt the dealer");
    app.add_flag("--corrupt-int", corrupt_int, "corrupt the intermediary");
    app.add_option("--corrupt-verifiers", corrupt_verifiers,
                   "comma-separated 1-based verifier ids to corrupt (at most t)")
        ->delimiter(',');
    app.add_option("--strategy", strategy_name, strategy_help())->capture_default_str();
    app.add_option("--out", out_path,
                   "output path (run: transcript text; other subcommands: JSON report)");

    auto* cmd_run = app.add_subcommand("run", "run one session and print the outcome");
    auto* cmd_mc =
        app.add_subcommand("montecarlo", "estimate an event rate and check it against its bound");
    std::uint64_t trials = 10000;
    unsigned threads = 1;
    cmd_mc->add_option("--trials", trials, "number of sessions")->capture_default_str();
    cmd_mc->add_option("--threads", threads, "worker threads (results are thread-count invariant)")
        ->capture_default_str();
    auto* cmd_secrecy = app.add_subcommand(
        "secrecy", "exhaustively audit the secret distribution given a passive adversary view");
    std::vector<unsigned> leak_ids;
    cmd_secrecy
        ->add_option("--leak", leak_ids,
                     "additionally leak these honest verifiers' triples (1-based ids)")
        ->delimiter(',');
    auto* cmd_lin =
        app.add_subcommand("linearity", "combine several signatures and reveal the sum");
    unsigned q = 2;
    std::vector<std::uint64_t> offsets;
    std::vector<unsigned> broadcast_instances;
    std::vector<unsigned> cheat_instances{0};
    cmd_lin->add_option("--q", q, "number of combined instances")->capture_default_str();
    cmd_lin->add_option("--offsets", offsets, "public offset block (ell raw field values)")
        ->delimiter(',');
    cmd_lin
        ->add_option("--broadcast-instances", broadcast_instances,
                     "0-based instances the dealer voluntarily publishes during Ver")
        ->delimiter(',');
    cmd_lin
        ->add_option("--cheat-instances", cheat_instances,
                     "0-based instances a cheating dealer fabricates in")
        ->delimiter(',');
    auto* cmd_cx =
        app.add_subcommand("complexity", "compare measured communication cost to the closed form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        mvicp::FieldParams field = kopt->count() ? mvicp::FieldParams::from_kappa(kappa)
                                   : eopt->count()
                                       ? mvicp::FieldParams::smallest_for(n, parse_epsilon(epsilon))
                                       : mvicp::FieldParams::from_kappa(8);
        mvicp::ProtocolParams params = mvicp::ProtocolParams::make(n, ell, field);
        if (t_opt >= 0 && static_cast<unsigned>(t_opt) != params.t)
            throw mvicp::ConfigError("t must equal (n-1)/2");
        if (reveal_rounds != 1 && reveal_rounds != 2)
            throw mvicp::ConfigError("reveal-rounds must be 1 or 2");

        mvicp::SessionConfig cfg;
        cfg.params = params;
        cfg.corrupt_dealer = corrupt_dealer;
        cfg.corrupt_int = corrupt_int;
        cfg.corrupt_verifiers = corrupt_verifiers;
        cfg.strategy = mvicp::strategy_from_name(strategy_name);
        cfg.rushing = rushing;
        cfg.reveal_mode =
            reveal_rounds == 2 ? mvicp::RevealMode::TwoRound : mvicp::RevealMode::OneRound;
        cfg.seed = seed;
        cfg.validate();

        mvicp::Report rep;
        if (cmd_run->parsed()) {
            rep = mvicp::report_run(cfg);
            if (!out_path.empty()) write_file(out_path, mvicp::run_session(cfg).transcript.export_text());
        } else if (cmd_mc->parsed()) {
            rep = mvicp::report_montecarlo(cfg, trials, seed, threads);
        } else if (cmd_secrecy->parsed()) {
            rep = mvicp::report_secrecy(cfg, leak_ids);
        } else if (cmd_lin->parsed()) {
            mvicp::LinearOptions opt;
            opt.q = q;
            opt.offset_values = offsets;
            opt.broadcast_instances = broadcast_instances;
            opt.cheat_instances = cheat_instances;
            rep = mvicp::report_linearity(cfg, opt);
        } else if (cmd_cx->parsed()) {
            rep = mvicp::report_complexity(params);
        }

        std::cout << rep.human;
        if (!out_path.empty() && !cmd_run->parsed()) write_file(out_path, rep.json.dump(2) + "\n");
        return rep.pass ? 0 : 1;
    } catch (const mvicp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
