#include "rpg/driver.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "rpg/absorb2.hpp"
#include "rpg/instance.hpp"
#include "rpg/stats.hpp"

#ifndef RPG_BUILD_ID
#define RPG_BUILD_ID "unknown"
#endif

namespace rpg {

using nlohmann::json;

const char* build_id() { return RPG_BUILD_ID; }

void ExperimentConfig::validate() const {
    auto bad = [](const std::string& s) { throw Error("BadParams", s); };
    if (n < 3) bad("n must be at least 3");
    if (d != 1 && d != 2) bad("d must be 1 or 2");
    if (d == 1 && n % 2) bad("d = 1 needs even n");
    if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha must lie in (0, 1)");
    for (double a : alpha_grid)
        if (!(a > 0.0 && a < 1.0)) bad("alpha grid values must lie in (0, 1)");
    if (!(eps > 0.0 && eps < 1.0)) bad("eps must lie in (0, 1)");
    if (!(eta > 0.0 && eta < 1.0)) bad("eta must lie in (0, 1)");
    if (trials < 1) bad("trials must be positive");
    if (threads < 1) bad("threads must be positive");
    Family f = parse_family(family);
    if (f == Family::UnbalancedBipartite && !(alpha < 0.5)) bad("unbalanced-bipartite needs alpha < 1/2");
}

namespace {

json config_obj(const ExperimentConfig& c) {
    return json{{"command", c.command}, {"n", c.n},           {"d", c.d},
                {"alpha", c.alpha},     {"eps", c.eps},       {"eta", c.eta},
                {"family", c.family},   {"trials", c.trials}, {"seed", c.seed},
                {"strictness", c.strict ? "strict" : "experiment"},
                {"out", c.out},         {"alpha_grid", c.alpha_grid}};
}

json failures_obj(const std::vector<Failure>& fs) {
    json a = json::array();
    for (const auto& f : fs) {
        json o{{"stage", f.stage}, {"reason", f.reason}};
        o["k"] = f.k ? json(*f.k) : json(nullptr);
        a.push_back(o);
    }
    return a;
}

void fill_from_cycles(TrialReport& r, const std::map<int, std::vector<Vertex>>& cycles) {
    for (const auto& [k, c] : cycles) r.lengths.push_back(k);
    r.cycles_found = static_cast<int>(cycles.size());
    r.hamiltonian = cycles.count(r.n) > 0;
}

void run_two_factor(const Instance& inst, Rng& rng, const ExperimentConfig& cfg, TrialReport& r) {
    Absorb2Options o;
    o.strict = cfg.strict;
    WitnessResult w = pancyclic_witness(inst, &rng, o);
    r.mode = "2-factor";
    fill_from_cycles(r, w.cycles);
    r.failures = w.failures;
    r.complete = w.complete(inst.n());
    r.base_length = w.base_length;
    r.fallbacks = w.fallbacks;
    const auto& t = w.trace;
    if (t.budget_exceeded) r.flags.push_back("merge budget exceeded");
    if (t.component_bound_exceeded) r.flags.push_back("component bound exceeded");
    json j{{"absorbers", w.path.reserve.size()},
           {"initial_components", t.initial_components},
           {"component_bound", t.component_bound},
           {"merge_steps", t.steps.size()},
           {"budget", t.budget},
           {"budget_exceeded", t.budget_exceeded},
           {"component_bound_exceeded", t.component_bound_exceeded},
           {"case1_violations", t.case1_violations},
           {"two_step_violations", t.two_step_violations},
           {"removal_violations", t.removal_violations},
           {"cases", t.case_counts()}};
    r.trace_json = j.dump();
}

void run_matching(const Instance& inst, Rng& rng, const ExperimentConfig& cfg, TrialReport& r) {
    SixStepOptions o;
    o.eps = cfg.eps;
    o.eta = cfg.eta;
    o.strict = cfg.strict;
    MatchingPipelineResult m = pancyclic_witness_matching(inst, &rng, o);
    r.mode = m.mode;
    fill_from_cycles(r, m.cycles);
    r.failures = m.failures;
    r.complete = m.complete(inst.n());
    r.base_length = m.base_length;
    r.fallbacks = m.fallbacks;
    json j{{"matching_size", m.matching_size}};
    if (m.partition) {
        const auto& p = *m.partition;
        j["partition"] = {{"A", p.A.size()},   {"B1", p.B1.size()}, {"B2", p.B2.size()},
                          {"C1", p.C1.size()}, {"C2", p.C2.size()}, {"R", p.R.size()},
                          {"istar", p.istar},  {"scale_ok", p.scale_ok},
                          {"soft_claim_violations", p.soft_claim_violations}};
        if (!p.scale_ok) r.flags.push_back("beta below 8/sqrt(n)");
    }
    if (m.partition_check) {
        const auto& c = *m.partition_check;
        j["partition_check"] = {{"h1", c.h1}, {"h2", c.h2}, {"h3", c.h3}, {"h4", c.h4}};
    }
    if (m.trace) {
        const auto& t = *m.trace;
        json bad = json::array();
        for (const auto& c : t.checks)
            if (!c.ok) {
                bad.push_back({{"step", c.step}, {"name", c.name}, {"detail", c.detail}});
                r.flags.push_back("step " + std::to_string(c.step) + " " + c.name);
            }
        j["six_step"] = {{"t", t.t},           {"t_formula", t.t_formula}, {"cases", t.cases},
                         {"failed_checks", bad}, {"S_after", t.s_after},   {"D_after", t.d_after},
                         {"K_after", t.k_after},
                         {"short_cycles_removed_step2", t.short_cycles_removed_step2}};
    }
    r.trace_json = j.dump();
}

}  // namespace

std::string ExperimentConfig::to_json() const { return config_obj(*this).dump(2); }

TrialReport run_trial(const ExperimentConfig& cfg, int trial) {
    auto t0 = std::chrono::steady_clock::now();
    TrialReport r;
    r.trial = trial;
    r.n = cfg.n;
    Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(trial));
    try {
        ExtremalSpec spec{parse_family(cfg.family), cfg.n, cfg.alpha};
        Instance inst = build_instance(make_extremal(spec, &rng), cfg.d, rng);
        r.min_degree_ratio = inst.alpha;
        if (cfg.d == 2)
            run_two_factor(inst, rng, cfg, r);
        else
            run_matching(inst, rng, cfg, r);
        if (cfg.d == 1 && spec.family == Family::UnbalancedBipartite) {
            int a = bipartite_small_side(spec);
            std::vector<char> in_b(cfg.n, 0);
            for (Vertex v = a; v < cfg.n; ++v) in_b[v] = 1;
            r.obstruction = bipartite_obstruction(inst.G, in_b, static_cast<double>(a) / cfg.n);
        }
    } catch (const Error& e) {
        r.failures.push_back({std::nullopt, "precondition", e.what()});
        r.complete = false;
    } catch (const AlgoFailure& f) {
        r.failures.push_back({std::nullopt, f.stage(), f.reason()});
        r.complete = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<TrialReport> run_trials(const ExperimentConfig& cfg) {
    std::vector<TrialReport> out(cfg.trials);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < cfg.trials; i = next++) out[i] = run_trial(cfg, i);
    };
    int workers = std::max(1, std::min(cfg.threads, cfg.trials));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

std::string report_json(const ExperimentConfig& cfg, const std::vector<TrialReport>& trials, bool with_timing) {
    json j;
    j["build_id"] = build_id();
    j["config"] = config_obj(cfg);
    json arr = json::array();
    int complete = 0, ham = 0, cert = 0;
    double total = 0;
    for (const auto& r : trials) {
        json t{{"trial", r.trial},
               {"n", r.n},
               {"min_degree_ratio", r.min_degree_ratio},
               {"mode", r.mode},
               {"cycles_found", r.cycles_found},
               {"complete", r.complete},
               {"hamiltonian", r.hamiltonian},
               {"base_length", r.base_length},
               {"fallbacks", r.fallbacks},
               {"failures", failures_obj(r.failures)},
               {"flags", r.flags}};
        json missing = json::array();
        std::size_t i = 0;
        for (int k = 3; k <= r.n; ++k) {
            while (i < r.lengths.size() && r.lengths[i] < k) ++i;
            if (i == r.lengths.size() || r.lengths[i] != k) missing.push_back(k);
        }
        t["missing_lengths"] = missing;
        t["obstruction"] = r.obstruction ? json(to_string(*r.obstruction)) : json(nullptr);
        t["trace"] = r.trace_json.empty() ? json(nullptr) : json::parse(r.trace_json);
        if (with_timing) t["wall_seconds"] = r.seconds;
        arr.push_back(t);
        complete += r.complete;
        ham += r.hamiltonian;
        cert += r.obstruction == Verdict::NonHamiltonianCertified;
        total += r.seconds;
    }
    j["trials"] = arr;
    j["summary"] = {{"trials", trials.size()}, {"complete", complete}, {"hamiltonian", ham}, {"certified", cert}};
    if (with_timing) j["summary"]["wall_seconds"] = total;
    return j.dump(2);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    std::vector<SweepRow> rows;
    for (double a : cfg.alpha_grid) {
        ExperimentConfig c = cfg;
        c.alpha = a;
        auto res = run_trials(c);
        SweepRow row;
        row.alpha = a;
        row.n = cfg.n;
        row.trials = cfg.trials;
        for (const auto& r : res) {
            row.complete += r.complete;
            row.hamiltonian += r.hamiltonian;
            row.certified += r.obstruction == Verdict::NonHamiltonianCertified;
        }
        row.success_rate = static_cast<double>(row.complete) / row.trials;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<SweepRow>& rows) {
    out << "alpha,n,d,family,trials,complete,hamiltonian,certified,success_rate\n";
    for (const auto& r : rows)
        out << std::setprecision(6) << r.alpha << ',' << r.n << ',' << cfg.d << ',' << cfg.family << ','
            << r.trials << ',' << r.complete << ',' << r.hamiltonian << ',' << r.certified << ','
            << r.success_rate << '\n';
}

void write_estimate_table(std::ostream& out, double n, double alpha, int r_max) {
    out << "r,threshold_root,expected_components,per_size\n";
    for (int r = 1; r <= r_max; ++r) {
        KrExpectation e = kr_expected_components(n, r, alpha);
        out << r << ',' << std::fixed << std::setprecision(6) << kr_threshold_root(r) << ',' << e.total << ',';
        for (int s = 1; s <= r; ++s) out << (s > 1 ? ";" : "") << e.per_size[s];
        out << '\n' << std::defaultfloat;
    }
}

}  // namespace rpg
