#include "rpg/partition.hpp"

#include <algorithm>
#include <cmath>

namespace rpg {

const char* to_string(Part p) {
    switch (p) {
        case Part::A: return "A";
        case Part::B1: return "B1";
        case Part::B2: return "B2";
        case Part::C1: return "C1";
        case Part::C2: return "C2";
        case Part::R: return "R";
    }
    return "?";
}

namespace {

int count_into(const StaticGraph& H, Vertex v, const std::vector<char>& mask) {
    int c = 0;
    for (Vertex u : H.neighbors(v)) c += mask[u] != 0;
    return c;
}

}  // namespace

Partition make_partition(const StaticGraph& H, const Matching& M, double alpha, double beta, bool strict) {
    const int n = H.n();
    if (!(beta > 0.0) || !(beta < alpha / 2.0))
        throw Error("PreconditionFailed", "need 0 < beta < alpha/2");
    if (!(alpha < 0.5)) throw Error("PreconditionFailed", "need alpha < 1/2");
    if (!is_matching(H, M.mate)) throw Error("PreconditionFailed", "mate array is not a matching of H");
    const int uncovered = n - 2 * M.size;
    if (uncovered < std::sqrt(static_cast<double>(n)))
        throw Error("PreconditionFailed", "matching leaves fewer than sqrt(n) vertices uncovered");

    Partition p;
    p.n = n;
    p.alpha = alpha;
    p.beta = beta;
    p.mate = M.mate;
    p.matching_size = M.size;
    p.scale_ok = beta >= 8.0 / std::sqrt(static_cast<double>(n));
    if (strict && !p.scale_ok) throw Error("PreconditionFailed", "beta below 8/sqrt(n)");

    const double low = (alpha - beta) * n;
    const double stop = beta * n / 2.0;
    const double soft_cap = 4.0 / beta;
    std::vector<char> used(n, 0), cur(n, 0), union_b1(n, 0), union_b2(n, 0);
    std::vector<int> cnt(n, 0);

    std::vector<Vertex> r0;
    for (Vertex v = 0; v < n; ++v)
        if (M.mate[v] < 0) {
            r0.push_back(v);
            used[v] = 1;
        }
    for (Vertex v : r0)
        for (Vertex u : H.neighbors(v))
            if (M.mate[u] < 0) throw Error("ClaimViolated", "level 0: uncovered vertices span an edge");
    p.b1_levels.push_back({});
    p.b2_levels.push_back(r0);

    for (int i = 1;; ++i) {
        const std::vector<Vertex> prev = p.b2_levels[i - 1];
        std::vector<Vertex> b1;
        for (Vertex v : prev)
            for (Vertex u : H.neighbors(v))
                if (!used[u] && M.mate[u] >= 0 && ++cnt[u] == 2) b1.push_back(u);
        for (Vertex v : prev)
            for (Vertex u : H.neighbors(v)) cnt[u] = 0;
        std::sort(b1.begin(), b1.end());
        for (Vertex v : b1) cur[v] = 1;
        for (Vertex v : b1)
            if (cur[M.mate[v]])
                throw Error("ClaimViolated", "level " + std::to_string(i) + ": B1 level spans a matching edge");
        std::vector<Vertex> b2;
        for (Vertex v : b1) b2.push_back(M.mate[v]);
        for (Vertex v : b1) cur[v] = 0;
        p.b1_levels.push_back(b1);
        p.b2_levels.push_back(b2);
        if (static_cast<double>(b1.size()) < stop) {
            p.istar = i - 1;
            break;
        }
        for (Vertex v : b1) used[v] = union_b1[v] = 1;
        for (Vertex v : b2) used[v] = union_b2[v] = cur[v] = 1;
        for (Vertex v : b2)
            for (Vertex u : H.neighbors(v))
                if (cur[u]) throw Error("ClaimViolated", "level " + std::to_string(i) + ": B2 level not independent");
        for (Vertex v : b2) cur[v] = 0;
        int weak = 0;
        for (Vertex v : prev) weak += count_into(H, v, union_b1) < low;
        if (weak > soft_cap) ++p.soft_claim_violations;
    }
    if (p.istar >= 1) {
        int weak = 0;
        for (Vertex v : p.b2_levels[p.istar]) weak += count_into(H, v, union_b1) < low;
        if (weak > soft_cap) ++p.soft_claim_violations;
    }

    std::vector<char> in_a(n, 0);
    std::vector<char> b1_first(n, 0);
    if (p.istar >= 1)
        for (Vertex v : p.b1_levels[1]) b1_first[v] = 1;
    for (Vertex v : r0)
        if (count_into(H, v, b1_first) < low) in_a[v] = 1;
    for (Vertex v = 0; v < n; ++v)
        if (union_b2[v] && count_into(H, v, union_b1) < low) in_a[v] = in_a[M.mate[v]] = 1;

    std::vector<char> next_b1(n, 0);
    for (Vertex v : p.b1_levels.back()) next_b1[v] = 1;
    p.part.assign(n, Part::A);
    for (Vertex v = 0; v < n; ++v) {
        if (in_a[v]) continue;
        if (M.mate[v] < 0)
            p.part[v] = Part::R;
        else if (union_b1[v])
            p.part[v] = Part::B1;
        else if (union_b2[v])
            p.part[v] = Part::B2;
        else if (next_b1[v])
            p.part[v] = Part::C1;
        else if (next_b1[M.mate[v]])
            p.part[v] = Part::C2;
        else
            p.part[v] = v < M.mate[v] ? Part::C1 : Part::C2;
    }
    for (Vertex v = 0; v < n; ++v) {
        switch (p.part[v]) {
            case Part::A: p.A.push_back(v); break;
            case Part::B1: p.B1.push_back(v); break;
            case Part::B2: p.B2.push_back(v); break;
            case Part::C1: p.C1.push_back(v); break;
            case Part::C2: p.C2.push_back(v); break;
            case Part::R: p.R.push_back(v); break;
        }
    }
    p.gamma1 = static_cast<double>(p.C1.size()) / n;
    p.gamma2 = static_cast<double>(p.B1.size()) / n;
    return p;
}

PartitionCheck check_partition_properties(const StaticGraph& H, const Partition& p) {
    PartitionCheck c;
    const int n = p.n;
    const double eps = 1e-9;
    auto fail = [&](const std::string& s) { c.violations.push_back(s); };

    c.h1 = static_cast<double>(p.A.size()) <= 12.0 / (p.beta * p.beta) + eps;
    if (!c.h1) fail("H1: |A| = " + std::to_string(p.A.size()));

    const int deficit = n - 2 * p.matching_size;
    const int r = static_cast<int>(p.R.size()), a = static_cast<int>(p.A.size());
    c.h2 = deficit - a <= r && r <= deficit;
    if (!c.h2) fail("H2: |R| = " + std::to_string(r));

    std::vector<char> b1(n, 0), b2r(n, 0);
    for (Vertex v : p.B1) b1[v] = 1;
    for (Vertex v : p.B2) b2r[v] = 1;
    for (Vertex v : p.R) b2r[v] = 1;

    c.h3 = p.B1.size() == p.B2.size();
    for (Vertex v : p.B1) {
        Vertex u = p.mate[v];
        if (u < 0 || p.part[u] != Part::B2 || !H.has_edge(u, v)) {
            c.h3 = false;
            fail("H3: B1 vertex " + std::to_string(v) + " not matched into B2");
        }
    }
    const double need = (p.alpha - 2.0 * p.beta) * n;
    for (Vertex v = 0; v < n; ++v) {
        if (!b2r[v]) continue;
        if (count_into(H, v, b1) + eps < need) {
            c.h3 = false;
            fail("H3: vertex " + std::to_string(v) + " has too few B1 neighbours");
        }
    }

    c.h4 = p.C1.size() == p.C2.size();
    for (Vertex v : p.C1) {
        Vertex u = p.mate[v];
        if (u < 0 || p.part[u] != Part::C2 || !H.has_edge(u, v)) {
            c.h4 = false;
            fail("H4: C1 vertex " + std::to_string(v) + " not matched into C2");
        }
    }
    const double cap = 1.0 / p.beta + 1.0;
    for (Vertex v : p.C2)
        if (count_into(H, v, b2r) > cap + eps) {
            c.h4 = false;
            fail("H4: C2 vertex " + std::to_string(v) + " has too many B2/R neighbours");
        }
    return c;
}

}  // namespace rpg
