#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rpg/instance.hpp"
#include "rpg/verify.hpp"

using namespace rpg;

namespace {

// Adjacency-matrix DP: path[S][v] = a simple path from min(S) through S ending at v.
std::vector<char> lengths_dp(const StaticGraph& g) {
    const int n = g.n();
    std::vector<char> has(n + 1, 0);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<std::vector<char>> path(1u << n, std::vector<char>(n, 0));
    for (int s = 0; s < n; ++s) path[1u << s][s] = 1;
    for (unsigned S = 1; S < (1u << n); ++S) {
        int s = __builtin_ctz(S);
        int k = __builtin_popcount(S);
        for (int v = 0; v < n; ++v) {
            if (!path[S][v]) continue;
            if (k >= 3 && adj[v][s]) has[k] = 1;
            for (int u = s + 1; u < n; ++u)
                if (adj[v][u] && !(S >> u & 1u)) path[S | (1u << u)][u] = 1;
        }
    }
    return has;
}

StaticGraph cycle_graph(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return StaticGraph(n, e);
}

}  // namespace

TEST_CASE("cycle certificates") {
    StaticGraph k4 = make_extremal({Family::Complete, 4, 0.0});
    CHECK(validate_cycle(k4, {0, 1, 2}, 3).ok);
    CHECK(!validate_cycle(k4, {0, 1, 1}, 3).ok);
    CHECK(!validate_cycle(k4, {0, 1}, 2).ok);
    CHECK(!validate_cycle(k4, {0, 1, 2}, 4).ok);
    CHECK(!validate_cycle(k4, {0, 1, 7}, 3).ok);
    StaticGraph c6 = cycle_graph(6);
    CHECK(validate_cycle(c6, {0, 1, 2, 3, 4, 5}, 6).ok);
    CycleCheck bad = validate_cycle(c6, {0, 1, 2, 4, 3, 5}, 6);
    CHECK(!bad.ok);
    CHECK(!bad.violation.empty());
}

TEST_CASE("small fixed graphs") {
    StaticGraph k5 = make_extremal({Family::Complete, 5, 0.0});
    CHECK(is_pancyclic_bruteforce(k5));
    auto c6 = cycle_lengths_bruteforce(cycle_graph(6));
    for (int k = 0; k <= 6; ++k) CHECK(static_cast<bool>(c6[k]) == (k == 6));
    CHECK(is_hamiltonian_bruteforce(cycle_graph(6)));
    CHECK(!is_pancyclic_bruteforce(cycle_graph(6)));
    StaticGraph k24 = make_extremal({Family::UnbalancedBipartite, 6, 0.49});
    auto b = cycle_lengths_bruteforce(k24);
    CHECK(!b[3]);
    CHECK(b[4]);
    CHECK(!b[5]);
    CHECK(!b[6]);
    CHECK_THROWS_AS(cycle_lengths_bruteforce(StaticGraph(17)), Error);
}

TEST_CASE("brute force agrees with an independent DP on random graphs") {
    Rng rng = substream(31, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 9;
        std::vector<Edge> e;
        double p = 0.15 + 0.6 * uniform01(rng);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (uniform01(rng) < p) e.emplace_back(u, v);
        StaticGraph g(n, e);
        REQUIRE(cycle_lengths_bruteforce(g) == lengths_dp(g));
    }
    for (int rep = 0; rep < 30; ++rep) {
        int n = 3 + static_cast<int>(uniform_below(rng, 8));
        std::vector<Edge> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (uniform01(rng) < 0.5) e.emplace_back(u, v);
        StaticGraph g(n, e);
        REQUIRE(cycle_lengths_bruteforce(g) == lengths_dp(g));
    }
}
