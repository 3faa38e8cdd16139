// rpg: sample perturbed instances, run the cycle pipelines, sweep, estimate,
// verify certificates and collect component statistics.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rpg/driver.hpp"
#include "rpg/instance.hpp"
#include "rpg/stats.hpp"
#include "rpg/verify.hpp"

namespace {

constexpr int kOk = 0, kUsage = 2, kAlgo = 3, kIo = 4;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw rpg::Error("IOError", "cannot open " + path + " for writing");
    f << text;
    if (!f) throw rpg::Error("IOError", "write failed for " + path);
}

std::vector<double> parse_grid(const std::string& spec) {
    // "lo:hi:step" or comma list
    std::vector<double> out;
    if (spec.empty()) return out;
    if (spec.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream in(spec);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || step <= 0)
            throw rpg::Error("BadParams", "alpha grid must be lo:hi:step");
        for (int i = 0; lo + i * step <= hi + 1e-9; ++i) out.push_back(lo + i * step);
        return out;
    }
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

int cmd_sample(const rpg::ExperimentConfig& cfg) {
    if (cfg.out.empty()) throw rpg::Error("BadParams", "sample needs --out <prefix>");
    for (int t = 0; t < cfg.trials; ++t) {
        rpg::Rng rng = rpg::substream(cfg.seed, t);
        rpg::ExtremalSpec spec{rpg::parse_family(cfg.family), cfg.n, cfg.alpha};
        rpg::Instance inst = rpg::build_instance(rpg::make_extremal(spec, &rng), cfg.d, rng);
        std::string prefix = cfg.trials == 1 ? cfg.out : cfg.out + "." + std::to_string(t);
        rpg::save_instance(prefix, inst, {cfg.n, cfg.d, cfg.alpha, cfg.seed, cfg.family});
        std::cout << prefix << ": n=" << inst.n() << " |E(H)|=" << inst.H.edge_count()
                  << " |E(G)|=" << inst.G.edge_count() << " delta(H)/n=" << inst.alpha << '\n';
    }
    return kOk;
}

int cmd_run(const rpg::ExperimentConfig& cfg) {
    auto trials = rpg::run_trials(cfg);
    std::string report = rpg::report_json(cfg, trials);
    if (!cfg.out.empty()) write_text(cfg.out, report + "\n");
    int complete = 0, failed = 0;
    for (const auto& r : trials) {
        complete += r.complete;
        failed += !r.failures.empty();
        std::cout << "trial " << r.trial << ": mode=" << r.mode << " lengths=" << r.cycles_found << "/"
                  << (r.n - 2) << (r.complete ? " complete" : " incomplete");
        if (r.obstruction) std::cout << " obstruction=" << rpg::to_string(*r.obstruction);
        if (!r.failures.empty())
            std::cout << " first_failure=[" << r.failures.front().stage << "] " << r.failures.front().reason;
        if (!r.flags.empty()) std::cout << " flags=" << r.flags.size();
        std::cout << '\n';
    }
    std::cout << complete << "/" << cfg.trials << " complete\n";
    return cfg.strict && failed ? kAlgo : kOk;
}

int cmd_sweep(const rpg::ExperimentConfig& cfg) {
    auto rows = rpg::run_sweep(cfg);
    std::ostringstream csv;
    rpg::write_sweep_csv(csv, cfg, rows);
    if (!cfg.out.empty()) write_text(cfg.out, csv.str());
    std::cout << csv.str();
    return kOk;
}

int cmd_verify(const std::string& instance, const std::string& cycle_file) {
    rpg::Instance inst = rpg::load_instance(instance);
    if (!cycle_file.empty()) {
        std::ifstream in(cycle_file);
        if (!in) throw rpg::Error("IOError", "cannot open " + cycle_file);
        std::vector<rpg::Vertex> c;
        for (rpg::Vertex v; in >> v;) c.push_back(v);
        rpg::CycleCheck chk = rpg::validate_cycle(inst.host, c, static_cast<int>(c.size()));
        std::cout << (chk.ok ? "PASS" : "FAIL: " + chk.violation) << '\n';
        return chk.ok ? kOk : kAlgo;
    }
    if (inst.n() > rpg::kBruteForceMaxN) throw rpg::Error("BadParams", "exhaustive check needs n <= 16, or pass --cycle");
    auto has = rpg::cycle_lengths_bruteforce(inst.host);
    bool all = true;
    for (int k = 3; k <= inst.n(); ++k) {
        std::cout << "k=" << k << ' ' << (has[k] ? "yes" : "no") << '\n';
        all = all && has[k];
    }
    std::cout << (all ? "pancyclic" : "not pancyclic") << '\n';
    return kOk;
}

int cmd_stats(const rpg::ExperimentConfig& cfg, const std::string& model) {
    rpg::StatsModel m;
    if (model == "two-factor")
        m = rpg::StatsModel::TwoFactor;
    else if (model == "matching-union")
        m = rpg::StatsModel::MatchingUnion;
    else
        throw rpg::Error("BadParams", "model must be two-factor or matching-union");
    auto s = rpg::component_stats(m, cfg.n, cfg.trials, cfg.seed, cfg.threads);
    std::string summary = rpg::stats_summary_json(s);
    if (!cfg.out.empty()) {
        std::ofstream csv(cfg.out + ".csv");
        if (!csv) throw rpg::Error("IOError", "cannot open " + cfg.out + ".csv");
        rpg::write_stats_csv(csv, s);
        write_text(cfg.out + ".json", summary + "\n");
    }
    std::cout << summary << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycles of all lengths in randomly perturbed dense graphs"};
    app.require_subcommand(1);
    rpg::ExperimentConfig cfg;
    std::string grid, instance, cycle_file, model = "two-factor";
    int r_max = 10;

    auto common = [&](CLI::App* sc) {
        sc->add_option("--n", cfg.n, "vertex count")->envname("RPG_N");
        sc->add_option("--d", cfg.d, "degree of the random graph (1 or 2)")->envname("RPG_D");
        sc->add_option("--alpha", cfg.alpha, "family density parameter")->envname("RPG_ALPHA");
        sc->add_option("--eps", cfg.eps)->envname("RPG_EPS");
        sc->add_option("--eta", cfg.eta)->envname("RPG_ETA");
        sc->add_option("--family", cfg.family,
                       "complete | unbalanced-bipartite | logn-bipartite | min-degree-random | empty")
            ->envname("RPG_FAMILY");
        sc->add_option("--trials", cfg.trials)->envname("RPG_TRIALS");
        sc->add_option("--seed", cfg.seed)->envname("RPG_SEED");
        sc->add_flag("--strict", cfg.strict, "ledger overruns and failures become exit code 3")
            ->envname("RPG_STRICT");
        sc->add_option("--out", cfg.out, "output path or prefix")->envname("RPG_OUT");
        sc->add_option("--threads", cfg.threads)->envname("RPG_THREADS");
    };
    auto* sample = app.add_subcommand("sample", "write H and G edge lists with a JSON sidecar");
    auto* run = app.add_subcommand("run", "run the pipeline and write a JSON report");
    auto* sweep = app.add_subcommand("sweep", "success rate per alpha as CSV");
    auto* estimate = app.add_subcommand("estimate", "K_r threshold roots and expected component counts");
    auto* verify = app.add_subcommand("verify", "validate a cycle or check pancyclicity exhaustively");
    auto* stats = app.add_subcommand("stats", "component statistics of the random factors");
    for (auto* sc : {sample, run, sweep, estimate, stats}) common(sc);
    sweep->add_option("--alpha-grid", grid, "lo:hi:step or a comma list")->envname("RPG_ALPHA_GRID");
    estimate->add_option("--r-max", r_max)->check(CLI::Range(1, 64));
    verify->add_option("--instance", instance, "instance prefix")->required();
    verify->add_option("--cycle", cycle_file, "whitespace-separated vertex sequence");
    stats->add_option("--model", model, "two-factor | matching-union");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(instance, cycle_file);
        cfg.command = app.get_subcommands().front()->get_name();
        if (sweep->parsed()) cfg.alpha_grid = parse_grid(grid);
        if (stats->parsed()) {
            if (cfg.trials < 1 || cfg.n < 1) throw rpg::Error("BadParams", "n and trials must be positive");
            return cmd_stats(cfg, model);
        }
        if (estimate->parsed()) {
            if (!(cfg.alpha > 0 && cfg.alpha < 1)) throw rpg::Error("BadParams", "alpha must lie in (0, 1)");
            rpg::write_estimate_table(std::cout, cfg.n, cfg.alpha, r_max);
            return kOk;
        }
        cfg.validate();
        if (sample->parsed()) return cmd_sample(cfg);
        if (run->parsed()) return cmd_run(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
    } catch (const rpg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.kind() == "IOError" || e.kind() == "ParseError") return kIo;
        if (e.kind() == "BadParams" || e.kind() == "ParityError") return kUsage;
        return kAlgo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
