#pragma once
// Perturbed instances H u G, available-edge queries and the deterministic H
// families used in experiments.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "rpg/graph.hpp"
#include "rpg/path_cycle.hpp"
#include "rpg/rng.hpp"

namespace rpg {

using EdgeKeySet = std::unordered_set<std::uint64_t>;
using VertexMask = std::vector<char>;

struct Instance {
    StaticGraph H;
    StaticGraph G;  // 1- or 2-regular
    int d = 0;
    double alpha = 0.0;  // delta(H) / n
    StaticGraph host;    // H u G
    AdjacencyBits hbits;

    Instance() = default;
    Instance(StaticGraph h, StaticGraph g, int degree);
    int n() const { return H.n(); }
    bool h_adj(Vertex u, Vertex v) const { return hbits.test(u, v); }
};

Instance build_instance(StaticGraph H, int d, Rng& rng);

// Oriented pairs (z, z') with zz' an edge of G not in D, z in N_H(x), z' in
// N_H(y), neither endpoint excluded. With `sys`, the edge must also be present
// in it. An unordered edge may appear in both orientations.
std::vector<Edge> available_edges(const Instance& inst, Vertex x, Vertex y, const VertexMask& exclude,
                                  const PathCycleSystem* sys, const EdgeKeySet& D);

// Edges zz' (z < z') of G not in D with both ends in N_H(x) n N_H(y) n B1.
std::vector<Edge> common_b1_edges(const Instance& inst, Vertex x, Vertex y, const VertexMask& in_b1,
                                  const EdgeKeySet& D);

enum class Family { Complete, UnbalancedBipartite, LognBipartite, MinDegreeRandom, Empty };

const char* to_string(Family f);
Family parse_family(const std::string& s);  // throws Error("BadParams")

struct ExtremalSpec {
    Family family = Family::Complete;
    int n = 0;
    double alpha = 0.0;
};

// rng is only used by MinDegreeRandom.
StaticGraph make_extremal(const ExtremalSpec& spec, Rng* rng = nullptr);
// Size of the small side A = {0, ..., a-1} of the bipartite families.
int bipartite_small_side(const ExtremalSpec& spec);

struct InstanceMeta {
    int n = 0;
    int d = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::string family;
};

// Writes <prefix>.H.txt, <prefix>.G.txt and <prefix>.json.
void save_instance(const std::string& prefix, const Instance& inst, const InstanceMeta& meta);
Instance load_instance(const std::string& prefix, InstanceMeta* meta = nullptr);

}  // namespace rpg
