#pragma once
// Cycle certificates and exhaustive cycle-length search for small graphs.

#include <string>
#include <vector>

#include "rpg/graph.hpp"

namespace rpg {

struct CycleCheck {
    bool ok = false;
    std::string violation;  // first problem found, empty when ok
};

// Passes iff the sequence has exactly k >= 3 distinct in-range vertices and
// every cyclically consecutive pair is an edge of host.
CycleCheck validate_cycle(const StaticGraph& host, const std::vector<Vertex>& cycle, int k);

constexpr int kBruteForceMaxN = 16;

// has[k] for k in [0, n]; has[0..2] are false. Backtracking over simple paths
// from the smallest cycle vertex, with (visited set, end) states memoised.
// Throws Error("TooLarge") above kBruteForceMaxN vertices.
std::vector<char> cycle_lengths_bruteforce(const StaticGraph& g);
bool is_pancyclic_bruteforce(const StaticGraph& g);
bool is_hamiltonian_bruteforce(const StaticGraph& g);

}  // namespace rpg
