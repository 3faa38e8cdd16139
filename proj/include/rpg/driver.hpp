#pragma once
// Experiment configuration, per-trial runs of both pipelines, worker pool,
// reports and sweep tables.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rpg/absorb1.hpp"
#include "rpg/failure.hpp"

namespace rpg {

const char* build_id();

struct ExperimentConfig {
    std::string command = "run";
    int n = 100;
    int d = 2;
    double alpha = 0.45;  // family parameter
    double eps = 0.1;
    double eta = 0.01;
    std::string family = "complete";
    int trials = 1;
    std::uint64_t seed = 1;
    bool strict = false;
    std::string out;
    std::vector<double> alpha_grid;  // sweep only
    int threads = 1;

    void validate() const;  // throws Error("BadParams")
    std::string to_json() const;
};

struct TrialReport {
    int trial = 0;
    int n = 0;
    double min_degree_ratio = 0.0;
    std::string mode;  // "2-factor", "matching-augmented", "six-step"
    int cycles_found = 0;
    std::vector<int> lengths;  // validated lengths, ascending
    std::vector<Failure> failures;
    bool complete = false;
    bool hamiltonian = false;
    std::optional<Verdict> obstruction;  // unbalanced-bipartite with d = 1
    int base_length = 0;
    int fallbacks = 0;
    std::vector<std::string> flags;  // soft ledger / budget overruns
    std::string trace_json;          // pipeline-specific detail
    double seconds = 0.0;
};

TrialReport run_trial(const ExperimentConfig& cfg, int trial);
// Fans trials out over cfg.threads workers; results ordered by trial index.
std::vector<TrialReport> run_trials(const ExperimentConfig& cfg);

// Timing fields are omitted when with_timing is false so identical configs
// give byte-identical reports.
std::string report_json(const ExperimentConfig& cfg, const std::vector<TrialReport>& trials, bool with_timing = true);

struct SweepRow {
    double alpha = 0.0;
    int n = 0;
    int trials = 0;
    int complete = 0;
    int hamiltonian = 0;
    int certified = 0;
    double success_rate = 0.0;  // complete / trials
};
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<SweepRow>& rows);

// Rows r = 1..r_max: threshold root and expected component totals at (n, alpha).
void write_estimate_table(std::ostream& out, double n, double alpha, int r_max);

}  // namespace rpg
