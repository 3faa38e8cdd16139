#pragma once
// Maximum-cardinality matching in general graphs (Edmonds' blossom search).

#include <vector>

#include "rpg/graph.hpp"

namespace rpg {

struct Matching {
    std::vector<Vertex> mate;  // -1 when uncovered
    int size = 0;

    int covered() const { return 2 * size; }
    bool has(Vertex v) const { return mate[v] >= 0; }
    std::vector<Edge> edges() const;  // u < v, sorted by u
};

// Greedy start, then one augmenting search per free vertex. A search that
// fails leaves a Hungarian tree whose vertices never lie on a later augmenting
// path, so they are dropped from subsequent searches.
Matching max_matching(const StaticGraph& g);

// True when the mate array describes disjoint edges of g.
bool is_matching(const StaticGraph& g, const std::vector<Vertex>& mate);

}  // namespace rpg
