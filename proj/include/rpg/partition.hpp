#pragma once
// Vertex partition A, B1, B2, C1, C2, R of a graph H with no near-perfect
// matching, built from the levels of alternating reachability from the
// vertices a maximum matching leaves uncovered.

#include <string>
#include <vector>

#include "rpg/graph.hpp"
#include "rpg/matching.hpp"

namespace rpg {

enum class Part : char { A, B1, B2, C1, C2, R };
const char* to_string(Part p);

struct Partition {
    int n = 0;
    double alpha = 0.0, beta = 0.0;
    std::vector<Part> part;     // per vertex
    std::vector<Vertex> mate;   // maximum matching used for the construction
    int matching_size = 0;
    std::vector<Vertex> A, B1, B2, C1, C2, R;
    std::vector<std::vector<Vertex>> b1_levels, b2_levels;  // index 0..i*+1
    int istar = 0;
    double gamma1 = 0.0, gamma2 = 0.0;  // |C1|/n, |B1|/n
    bool scale_ok = true;               // beta >= 8/sqrt(n)
    int soft_claim_violations = 0;      // low-degree counts above 4/beta in a level

    bool in(Vertex v, Part p) const { return part[v] == p; }
    // The matching restricted to B1 u B2 u C1 u C2 (pairs B1-B2 and C1-C2).
    Vertex partner(Vertex v) const {
        Part p = part[v];
        return (p == Part::A || p == Part::R) ? -1 : mate[v];
    }
};

struct PartitionCheck {
    bool h1 = false, h2 = false, h3 = false, h4 = false;
    std::vector<std::string> violations;
    bool ok() const { return h1 && h2 && h3 && h4; }
};

// Throws Error("PreconditionFailed") when beta >= alpha/2, alpha >= 1/2, the
// matching is not a matching of H, or it leaves fewer than sqrt(n) vertices
// uncovered. beta < 8/sqrt(n) only clears scale_ok, unless strict.
// Throws Error("ClaimViolated") when a level spans a matching edge or a B2
// level is not independent; both mean the matching was not maximum.
Partition make_partition(const StaticGraph& H, const Matching& M, double alpha, double beta,
                         bool strict = false);

PartitionCheck check_partition_properties(const StaticGraph& H, const Partition& p);

}  // namespace rpg
