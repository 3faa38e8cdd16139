#pragma once
// Cycles of every length in H u G for G a random perfect matching: the
// six-step reduction of M u G to one long cycle through an absorbing path,
// with the deleted-vertex set S, unavailable edges D and unavailable B1
// vertices K, followed by per-length extraction.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rpg/failure.hpp"
#include "rpg/instance.hpp"
#include "rpg/partition.hpp"
#include "rpg/path_cycle.hpp"
#include "rpg/rng.hpp"

namespace rpg {

enum class PairOrder { Random, Sequential };

struct SixStepOptions {
    double eps = 0.1;
    double eta = 0.01;
    bool randomized = true;
    bool strict = false;  // ledger overruns and invariant misses become failures
    PairOrder pair_order = PairOrder::Random;
    int t_override = 0;   // > 0 replaces the clamped absorber count
};

// One named bound or structural condition evaluated at a step boundary.
struct LedgerCheck {
    int step = 0;
    std::string name;
    bool ok = true;
    std::string detail;
};

struct SixStepTrace {
    int t = 0;           // absorbers actually used
    int t_formula = 0;   // ceil(3 / (eta alpha^2))
    std::vector<LedgerCheck> checks;
    std::map<std::string, int> cases;  // tallies such as "2:3.4.2" or "5:claim"
    int short_cycles_removed_step2 = 0;
    std::vector<int> s_after, d_after, k_after;  // sizes after steps 1..6
    int soft_failures() const;
};

struct SixStepResult {
    std::vector<Vertex> cycle;  // on V(H) minus S, absorbing path contiguous from index 0
    std::vector<Vertex> path;   // M(x1) x1 y1 w1 z1 x2 ... y_t M(y_t)
    std::vector<Vertex> reserve;         // u_1..u_t
    std::vector<Edge> absorb_edges;      // x_i y_i
    std::vector<Vertex> S;
    EdgeKeySet D;
    SixStepTrace trace;
};

// Throws AlgoFailure(stage "step N", reason) when a choice the argument
// guarantees asymptotically is unavailable at this n.
SixStepResult run_six_steps(const Instance& inst, const Partition& part, Rng* rng,
                            const SixStepOptions& opt = {});

class SixStepExtractor {
public:
    SixStepExtractor(const Instance& inst, const SixStepResult& res, Rng* rng, const SixStepOptions& opt);
    int base_length() const { return static_cast<int>(res_.cycle.size()); }
    int absorbable() const { return static_cast<int>(order_.size()); }
    std::vector<Vertex> extract(int k);  // throws AlgoFailure
    int fallback_count() const { return fallbacks_; }

private:
    std::vector<Vertex> absorb_reserve(std::vector<Vertex> cycle, int count) const;
    bool short_construction(int k, std::vector<Vertex>& out);
    bool middle_construction(int k, std::vector<Vertex>& out);

    const Instance& inst_;
    const SixStepResult& res_;
    Rng* rng_;
    SixStepOptions opt_;
    std::vector<int> idx_;
    std::vector<std::pair<Vertex, Edge>> order_;  // S vertices with their host edges, reserve first
    int fallbacks_ = 0;
};

enum class Verdict { NonHamiltonianCertified, Inconclusive };
const char* to_string(Verdict v);

// For H complete bipartite between A and B: certified when e_G(B) < ceil((1 - 2 alpha) n).
Verdict bipartite_obstruction(const StaticGraph& G, const std::vector<char>& in_b, double alpha);

struct MatchingPipelineResult {
    std::string mode;  // "matching-augmented" or "six-step"
    int matching_size = 0;
    std::optional<Partition> partition;
    std::optional<PartitionCheck> partition_check;
    std::map<int, std::vector<Vertex>> cycles;
    std::vector<Failure> failures;
    std::optional<SixStepTrace> trace;
    int base_length = 0;
    int fallbacks = 0;
    bool complete(int n) const {
        return failures.empty() && static_cast<int>(cycles.size()) == n - 2;
    }
};

// Dispatch on the maximum matching of H: more than n - sqrt(n) covered vertices
// goes to the matching-augmented 2-factor construction, otherwise partition and
// six steps. Every returned cycle has passed validate_cycle.
MatchingPipelineResult pancyclic_witness_matching(const Instance& inst, Rng* rng,
                                                  const SixStepOptions& opt = {});

}  // namespace rpg
