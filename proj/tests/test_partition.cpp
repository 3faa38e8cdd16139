#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rpg/instance.hpp"
#include "rpg/partition.hpp"
#include "support.hpp"

using namespace rpg;

namespace {

// Structural facts every partition must satisfy, checked from scratch.
void check_structure(const StaticGraph& H, const Partition& p, const Matching& M) {
    const int n = H.n();
    std::vector<int> seen(n, 0);
    for (const auto* part : {&p.A, &p.B1, &p.B2, &p.C1, &p.C2, &p.R})
        for (Vertex v : *part) ++seen[v];
    for (int v = 0; v < n; ++v) REQUIRE(seen[v] == 1);
    for (Vertex v : p.R) REQUIRE(M.mate[v] < 0);
    for (Vertex v = 0; v < n; ++v)
        if (M.mate[v] < 0) REQUIRE((p.part[v] == Part::R || p.part[v] == Part::A));
    for (Vertex v : p.B1) REQUIRE(p.part[M.mate[v]] == Part::B2);
    for (Vertex v : p.C1) REQUIRE(p.part[M.mate[v]] == Part::C2);
    // A is closed under the matching
    for (Vertex v : p.A)
        if (M.mate[v] >= 0) REQUIRE(p.part[M.mate[v]] == Part::A);
    for (Vertex v = 0; v < n; ++v) {
        bool unpaired = p.part[v] == Part::A || p.part[v] == Part::R;
        REQUIRE(p.partner(v) == (unpaired ? -1 : M.mate[v]));
    }
}

}  // namespace

TEST_CASE("preconditions") {
    StaticGraph b = make_extremal({Family::UnbalancedBipartite, 100, 0.3});
    Matching M = max_matching(b);
    CHECK_THROWS_AS(make_partition(b, M, 0.3, 0.2), Error);
    CHECK_THROWS_AS(make_partition(b, M, 0.6, 0.1), Error);
    Matching bad = M;
    bad.mate[0] = 1;
    CHECK_THROWS_AS(make_partition(b, bad, 0.3, 0.1), Error);
    StaticGraph k = make_extremal({Family::Complete, 100, 0.0});
    CHECK_THROWS_AS(make_partition(k, max_matching(k), 0.3, 0.1), Error);
    CHECK_THROWS_AS(make_partition(b, M, 0.3, 0.1, true), Error);  // beta below 8/sqrt(n)
    CHECK_NOTHROW(make_partition(b, M, 0.3, 0.1, false));
}

TEST_CASE("unbalanced bipartite host") {
    StaticGraph b = make_extremal({Family::UnbalancedBipartite, 400, 0.45});
    Matching M = max_matching(b);
    Partition p = make_partition(b, M, 0.45, 0.18);
    CHECK(p.A.empty());
    CHECK(p.B1.size() == 180);
    CHECK(p.B2.size() == 180);
    CHECK(p.R.size() == 40);
    CHECK(p.C1.empty());
    CHECK(p.istar == 1);
    for (Vertex v : p.B1) CHECK(v < 180);
    PartitionCheck c = check_partition_properties(b, p);
    CHECK(c.ok());
    check_structure(b, p, M);
}

TEST_CASE("random deficient hosts satisfy all four properties") {
    Rng rng = substream(21, 0);
    for (int rep = 0; rep < 15; ++rep) {
        double alpha = 0.2 + 0.15 * uniform01(rng);
        StaticGraph H = testing::deficient_host(400, alpha, rng);
        REQUIRE(H.min_degree() >= std::ceil(alpha * 400 - 1e-9));
        Matching M = max_matching(H);
        REQUIRE(400 - 2 * M.size >= 20);
        Partition p = make_partition(H, M, alpha, 0.4 * alpha);
        PartitionCheck c = check_partition_properties(H, p);
        INFO(alpha);
        CHECK(c.ok());
        CHECK(!p.C1.empty());
        check_structure(H, p, M);
    }
}

TEST_CASE("level claims hold on every small deficient graph sampled") {
    Rng rng = substream(22, 0);
    int tried = 0;
    for (int rep = 0; rep < 4000; ++rep) {
        int n = 4 + static_cast<int>(uniform_below(rng, 7));
        std::vector<Edge> e;
        double q = uniform01(rng) * 0.6;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (uniform01(rng) < q) e.emplace_back(u, v);
        StaticGraph g(n, e);
        Matching M = max_matching(g);
        if (n - 2 * M.size < std::sqrt(static_cast<double>(n))) continue;
        ++tried;
        Partition p = make_partition(g, M, 0.3, 0.1);
        check_structure(g, p, M);
        // B1 levels never span a matching edge; B2 levels are independent
        for (std::size_t i = 1; i < p.b1_levels.size(); ++i) {
            std::vector<char> in(n, 0);
            for (Vertex v : p.b1_levels[i]) in[v] = 1;
            for (Vertex v : p.b1_levels[i]) REQUIRE(!in[M.mate[v]]);
        }
        for (std::size_t i = 0; i + 1 < p.b2_levels.size(); ++i)
            for (Vertex u : p.b2_levels[i])
                for (Vertex v : p.b2_levels[i]) REQUIRE(!g.has_edge(u, v));
    }
    CHECK(tried > 500);
}
