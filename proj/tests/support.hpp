#pragma once
// Instance generators shared by the tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <vector>

#include "rpg/graph.hpp"
#include "rpg/rng.hpp"

namespace rpg::testing {

// Matching-deficient host: A (size ~ alpha n / 0.9) is complete-ish to an
// independent set B, each B vertex seeing at least ceil(alpha n) of A; an extra
// block X is dense inside, dense to A and has no B neighbours, so a maximum
// matching covers A from B and X internally, leaving about n - 2|A| - |X|
// vertices uncovered. Minimum degree is at least alpha n.
inline StaticGraph deficient_host(int n, double alpha, Rng& rng) {
    const int need = static_cast<int>(std::ceil(alpha * n - 1e-9));
    const int a = std::min(n / 2 - 1, static_cast<int>(std::ceil(alpha * n / 0.9)));
    int x = static_cast<int>(0.15 * n);
    x -= x % 2;
    std::vector<Edge> e;
    std::vector<int> A(a);
    for (int i = 0; i < a; ++i) A[i] = i;
    for (int u = 0; u < a; ++u)
        for (int v = u + 1; v < a; ++v)
            if (uniform01(rng) < 0.5) e.emplace_back(u, v);
    for (int b = a + x; b < n; ++b) {
        auto pool = A;
        shuffle(pool, rng);
        int k = std::min(a, need + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(a - need + 1))));
        for (int i = 0; i < k; ++i) e.emplace_back(pool[i], b);
    }
    for (int u = a; u < a + x; ++u) {
        for (int v = u + 1; v < a + x; ++v)
            if (uniform01(rng) < 0.9) e.emplace_back(u, v);
        for (int w = 0; w < a; ++w)
            if (uniform01(rng) < 0.9) e.emplace_back(w, u);
    }
    // top up anything still short of the minimum degree inside A u X
    StaticGraph g(n, e);
    for (int v = a; v < a + x; ++v)
        for (int w = 0; g.degree(v) < need && w < a; ++w)
            if (!g.has_edge(v, w)) {
                e.emplace_back(v, w);
                g = StaticGraph(n, e);
            }
    return StaticGraph(n, e);
}

}  // namespace rpg::testing
