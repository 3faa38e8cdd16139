#pragma once
// Configuration model for d in {1,2}: perfect matchings on the n*d points
// (owner, slot), projection to multigraphs, rejection to simple graphs and the
// switching relation.

#include <functional>
#include <utility>
#include <vector>

#include "rpg/graph.hpp"
#include "rpg/rng.hpp"

namespace rpg {

using PointPair = std::pair<int, int>;

class Configuration {
public:
    Configuration() = default;
    Configuration(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    int point_count() const { return n_ * d_; }
    int point(Vertex owner, int slot) const { return owner * d_ + slot; }
    Vertex owner(int p) const { return p / d_; }
    int slot(int p) const { return p % d_; }
    int partner(int p) const { return partner_[p]; }  // -1 while uncovered
    bool covered(int p) const { return partner_[p] >= 0; }
    bool complete() const;
    void pair(int p, int q);
    void unpair(int p);
    std::vector<PointPair> pairs() const;  // (p, q) with p < q, sorted by p
    const std::vector<int>& partners() const { return partner_; }
    bool operator==(const Configuration& o) const {
        return n_ == o.n_ && d_ == o.d_ && partner_ == o.partner_;
    }

private:
    int n_ = 0, d_ = 1;
    std::vector<int> partner_;
};

// What a pivot rule sees at each step of the pairing process.
struct PairingView {
    const Configuration& cfg;
    int last_x = -1;  // points paired in the previous step, -1 before the first
    int last_y = -1;
    int lowest_uncovered = -1;
};

// Returns an uncovered point; the sampler pairs it with a uniformly random
// other uncovered point. Any rule yields the uniform distribution.
using PivotRule = std::function<int(const PairingView&)>;

PivotRule lowest_uncovered_pivot();
// d = 2: continue from the vertex just reached so each component is revealed
// in full before the next one starts.
PivotRule finish_component_pivot();
// d = 1 with a fixed perfect matching sigma on the vertices: continue from the
// sigma-partner of the vertex just reached, tracing the components of sigma u G.
PivotRule partner_of_previous_pivot(std::vector<Vertex> sigma);

Configuration sample_configuration(int n, int d, Rng& rng, const PivotRule& pivot = {});
Configuration sample_conditioned(int n, int d, const std::vector<PointPair>& forced, Rng& rng,
                                 const PivotRule& pivot = {});

Multigraph project(const Configuration& cfg);

// Rejection sampling: resamples until the projection is simple.
StaticGraph sample_simple_regular(int n, int d, Rng& rng, int max_attempts = 64,
                                  int* attempts_used = nullptr);

// Switch anchored at points p1, p2 with partners q1 = M(p1), q2 = M(p2).
// crossing: {p1,q2},{p2,q1}; otherwise {p1,p2},{q1,q2}.
Configuration switch_pairs(const Configuration& cfg, int p1, int p2, bool crossing = true);

}  // namespace rpg
