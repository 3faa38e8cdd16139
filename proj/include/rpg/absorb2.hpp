#pragma once
// Cycles of every length in H u G for G a random 2-factor (or G a random
// perfect matching augmented by a near-perfect matching M of H): absorbing
// path, merging into one long cycle, and per-length extraction.

#include <map>
#include <string>
#include <vector>

#include "rpg/failure.hpp"
#include "rpg/instance.hpp"
#include "rpg/path_cycle.hpp"
#include "rpg/rng.hpp"

namespace rpg {

struct Absorb2Options {
    bool randomized = true;  // false: lowest-index choices everywhere
    int budget_slack = 64;
    int max_placements = 64;  // middle-regime windows tried before falling back
    bool strict = false;      // budget / component-bound overruns become failures
    const std::vector<Edge>* matching = nullptr;  // near-perfect matching of H
};

struct AbsorbingPath {
    std::vector<Vertex> reserve;     // u_1..u_m
    std::vector<Edge> absorb_edges;  // e_j = (z_j, z_j'), both ends adjacent in H to u_j
    std::vector<Edge> connectors;    // f_j = (w_j, w_j')
    std::vector<Vertex> vertices;    // z_1 z_1' w_1 w_1' z_2 ... z_m z_m'
    std::vector<Edge> edges() const;
};

struct MergeStep {
    std::string tag;
    int components_before = 0, components_after = 0;
    int paths_before = 0, paths_after = 0;
    int edges_removed = 0;
};

struct MergeTrace {
    std::vector<MergeStep> steps;
    int budget = 0;
    bool budget_exceeded = false;
    int initial_components = 0;
    int component_bound = 0;
    bool component_bound_exceeded = false;
    int case1_violations = 0;      // case 1 did not remove exactly one path
    int two_step_violations = 0;   // two consecutive case 2/3 steps without progress
    int removal_violations = 0;    // more than 3 edges left the available sets in one step
    std::map<std::string, int> case_counts() const;
};

struct AbsorberState {
    AbsorbingPath path;
    PathCycleSystem sys;
    VertexMask blocked;  // V(P) u U, never touched by available-edge queries
    EdgeKeySet removed;  // every edge deleted from sys so far
};

int absorber_count(int n, double alpha);  // max(2, floor(alpha^2 n / 1000))

// Checks the supplied matching (disjoint H-edges) and its coverage deficit.
void check_augmenting_matching(const Instance& inst, const std::vector<Edge>& matching);

AbsorberState build_absorber(const Instance& inst, Rng* rng, const Absorb2Options& opt,
                             MergeTrace* trace = nullptr);
void merge_to_cycle(AbsorberState& st, const Instance& inst, Rng* rng, MergeTrace& trace,
                    const Absorb2Options& opt);

// Builds length-k cycles from the merged cycle.
class CycleExtractor {
public:
    CycleExtractor(const Instance& inst, const AbsorberState& st, Rng* rng, const Absorb2Options& opt);
    int base_length() const { return static_cast<int>(cyc_.size()); }
    const std::vector<Vertex>& base_cycle() const { return cyc_; }  // P first, in order
    std::vector<Vertex> extract(int k);  // throws AlgoFailure
    int fallback_count() const { return fallbacks_; }

private:
    std::vector<Vertex> absorb(std::vector<Vertex> cycle, int count) const;
    bool short_construction(int k, std::vector<Vertex>& out);
    bool middle_construction(int k, std::vector<Vertex>& out);
    std::vector<Vertex> window(int start, int len) const;

    const Instance& inst_;
    const AbsorberState& st_;
    Rng* rng_;
    Absorb2Options opt_;
    std::vector<Vertex> cyc_;
    std::vector<int> idx_;
    int plen_ = 0;
    int fallbacks_ = 0;
};

struct WitnessResult {
    std::map<int, std::vector<Vertex>> cycles;
    std::vector<Failure> failures;
    MergeTrace trace;
    AbsorbingPath path;
    int base_length = 0;
    int fallbacks = 0;
    bool complete(int n) const {
        return failures.empty() && static_cast<int>(cycles.size()) == n - 2;
    }
};

// Every returned cycle has passed validate_cycle against H u G.
WitnessResult pancyclic_witness(const Instance& inst, Rng* rng, const Absorb2Options& opt = {});

}  // namespace rpg
