#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "rpg/instance.hpp"
#include "rpg/matching.hpp"

using namespace rpg;

namespace {

// Subset DP: best(S) = max(best(S - v), 1 + best(S - u - v)) over the lowest v in S.
int brute_force_matching(const StaticGraph& g) {
    const int n = g.n();
    std::vector<int> memo(1u << n, -1);
    std::function<int(unsigned)> best = [&](unsigned S) -> int {
        if (S == 0) return 0;
        if (memo[S] >= 0) return memo[S];
        int v = __builtin_ctz(S);
        unsigned rest = S & ~(1u << v);
        int r = best(rest);
        for (Vertex u : g.neighbors(v))
            if (rest >> u & 1u) r = std::max(r, 1 + best(rest & ~(1u << u)));
        return memo[S] = r;
    };
    return best((1u << n) - 1);
}

StaticGraph random_graph(int n, double p, Rng& rng) {
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) e.emplace_back(u, v);
    return StaticGraph(n, e);
}

}  // namespace

TEST_CASE("small fixed graphs") {
    CHECK(max_matching(StaticGraph(1)).size == 0);
    CHECK(max_matching(StaticGraph(4, {{0, 1}, {1, 2}, {2, 3}})).size == 2);
    // odd cycle with a pendant: needs a blossom
    StaticGraph blossom(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {4, 5}});
    CHECK(max_matching(blossom).size == 3);
    StaticGraph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(max_matching(star).size == 1);
}

TEST_CASE("agrees with subset DP on every graph up to n = 8 sampled densely") {
    Rng rng = substream(11, 0);
    for (int rep = 0; rep < 3000; ++rep) {
        int n = 1 + static_cast<int>(uniform_below(rng, 8));
        StaticGraph g = random_graph(n, uniform01(rng), rng);
        Matching m = max_matching(g);
        REQUIRE(is_matching(g, m.mate));
        REQUIRE(m.size == brute_force_matching(g));
    }
}

TEST_CASE("agrees with subset DP on sparse graphs up to n = 16") {
    Rng rng = substream(12, 0);
    for (int rep = 0; rep < 200; ++rep) {
        int n = 9 + static_cast<int>(uniform_below(rng, 8));
        StaticGraph g = random_graph(n, 0.05 + 0.3 * uniform01(rng), rng);
        Matching m = max_matching(g);
        REQUIRE(is_matching(g, m.mate));
        REQUIRE(m.size == brute_force_matching(g));
    }
}

TEST_CASE("bipartite deficiency") {
    StaticGraph b = make_extremal({Family::UnbalancedBipartite, 100, 0.3});
    CHECK(max_matching(b).size == 30);
    Rng rng = substream(13, 0);
    StaticGraph r = make_extremal({Family::MinDegreeRandom, 300, 0.5}, &rng);
    CHECK(max_matching(r).size == 150);
}

TEST_CASE("is_matching rejects bad mate arrays") {
    StaticGraph g(4, {{0, 1}, {2, 3}});
    CHECK(is_matching(g, {1, 0, 3, 2}));
    CHECK(is_matching(g, {-1, -1, -1, -1}));
    CHECK(!is_matching(g, {1, 0, 3}));
    CHECK(!is_matching(g, {2, -1, 0, -1}));
    CHECK(!is_matching(g, {1, 2, 3, 2}));
    Matching m{{1, 0, 3, 2}, 2};
    CHECK(m.edges() == std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK(m.covered() == 4);
}
