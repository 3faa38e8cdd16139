#pragma once
// Component statistics of the random factors, closed-form expectations and
// the K_r-factor threshold estimators.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rpg/graph.hpp"

namespace rpg {

// sum_{i=1}^{n} 1/(2i - 1), in long double.
long double expected_components_2factor(int n);
// Same sum as an exact fraction "p/q".
std::string expected_components_2factor_exact(int n);

enum class StatsModel {
    TwoFactor,        // components of G_{n,2}
    MatchingUnion,    // components / cycles of M u G_{n,1} for a fixed perfect matching M
};

struct ComponentStats {
    int n = 0;
    int d = 0;
    int trials = 0;
    std::vector<double> components;       // per trial
    std::vector<double> cycles;           // per trial
    std::vector<double> shared_edges;     // |E(M) n E(G)| per trial, MatchingUnion only
    std::vector<double> simple;           // 1 when the configuration projected to a simple graph
    double mean_components = 0.0, var_components = 0.0;
    double mean_cycles = 0.0;
};

// Configurations are sampled directly (multigraphs included: loops and double
// edges are components of the projected 2-factor). For MatchingUnion the fixed
// matching is {2i, 2i+1}. Trials run on per-trial substreams of `seed`, spread
// over `threads` workers; the result does not depend on the thread count.
ComponentStats component_stats(StatsModel model, int n, int trials, std::uint64_t seed, int threads = 1);

// |{z in A : N_G(z) n B nonempty}|
int edge_distribution_count(const StaticGraph& G, const std::vector<Vertex>& A, const std::vector<Vertex>& B);

struct KrExpectation {
    std::vector<double> per_size;  // index s = 0..r
    double total = 0.0;            // (n/r)(1 - alpha^r)
    double sum_per_size = 0.0;     // sum over s = 1..r of per_size[s]
};
KrExpectation kr_expected_components(double n, int r, double alpha);

// Positive root of x^r + r x - 1 on (0, 1], bisection to 1e-12 or better.
double kr_threshold_root(int r);

struct Summary {
    double mean = 0.0, stddev = 0.0, min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
    int count = 0;
};
Summary summarize(std::vector<double> values);

// trial,n,d,statistic,value
void write_stats_csv(std::ostream& out, const ComponentStats& s);
std::string stats_summary_json(const ComponentStats& s);

// Upper-tail probability of a chi-square variable with `dof` degrees of freedom.
double chi_square_sf(double stat, int dof);

}  // namespace rpg
