#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "rpg/instance.hpp"

using namespace rpg;

TEST_CASE("families have the advertised minimum degree") {
    Rng rng = substream(3, 0);
    StaticGraph k = make_extremal({Family::Complete, 12, 0.0});
    CHECK(k.min_degree() == 11);
    CHECK(k.edge_count() == 66);
    StaticGraph b = make_extremal({Family::UnbalancedBipartite, 100, 0.3});
    CHECK(b.min_degree() == 30);
    CHECK(b.edge_count() == 30u * 70u);
    CHECK(!b.has_edge(50, 60));
    CHECK(!b.has_edge(3, 7));
    CHECK(bipartite_small_side({Family::LognBipartite, 1000, 0.0}) == 1);
    for (double a : {0.2, 0.45, 0.7}) {
        StaticGraph r = make_extremal({Family::MinDegreeRandom, 200, a}, &rng);
        CHECK(r.min_degree() >= static_cast<int>(std::ceil(a * 200 - 1e-9)));
    }
    CHECK(make_extremal({Family::Empty, 5, 0.0}).edge_count() == 0);
    CHECK_THROWS_AS(make_extremal({Family::UnbalancedBipartite, 100, 0.5}), Error);
    CHECK_THROWS_AS(make_extremal({Family::MinDegreeRandom, 100, 0.4}), Error);
    CHECK_THROWS_AS(parse_family("petersen"), Error);
    for (Family f : {Family::Complete, Family::UnbalancedBipartite, Family::LognBipartite, Family::MinDegreeRandom,
                     Family::Empty})
        CHECK(parse_family(to_string(f)) == f);
}

TEST_CASE("instance combines H and G") {
    Rng rng = substream(4, 0);
    Instance inst = build_instance(make_extremal({Family::UnbalancedBipartite, 60, 0.25}), 2, rng);
    CHECK(inst.alpha == doctest::Approx(15.0 / 60));
    for (int v = 0; v < 60; ++v) CHECK(inst.G.degree(v) == 2);
    for (auto [u, v] : inst.G.edges()) CHECK(inst.host.has_edge(u, v));
    for (auto [u, v] : inst.H.edges()) CHECK(inst.host.has_edge(u, v));
    for (int u = 0; u < 60; ++u)
        for (int v = 0; v < 60; ++v) CHECK(inst.h_adj(u, v) == inst.H.has_edge(u, v));
}

TEST_CASE("available edges match a brute-force filter") {
    Rng rng = substream(5, 0);
    Instance inst = build_instance(make_extremal({Family::MinDegreeRandom, 40, 0.3}, &rng), 2, rng);
    PathCycleSystem sys(40);
    for (auto [u, v] : inst.G.edges())
        if (uniform_below(rng, 3)) sys.insert_edge(u, v);
    VertexMask excl(40, 0);
    for (int i = 0; i < 5; ++i) excl[uniform_below(rng, 40)] = 1;
    EdgeKeySet D;
    auto ge = inst.G.edges();
    for (int i = 0; i < 6; ++i) {
        auto e = ge[uniform_below(rng, ge.size())];
        D.insert(edge_key(e.first, e.second));
    }
    for (int x = 0; x < 40; ++x)
        for (int y = 0; y < 40; y += 3) {
            std::set<Edge> want;
            for (auto [a, b] : ge)
                for (auto [z, zp] : {Edge{a, b}, Edge{b, a}}) {
                    if (excl[z] || excl[zp] || D.count(edge_key(z, zp)) || !sys.has_edge(z, zp)) continue;
                    if (inst.H.has_edge(x, z) && inst.H.has_edge(y, zp)) want.insert({z, zp});
                }
            auto got = available_edges(inst, x, y, excl, &sys, D);
            CHECK(std::set<Edge>(got.begin(), got.end()) == want);
            CHECK(got.size() == want.size());
        }
}

TEST_CASE("common B1 edges match a brute-force filter") {
    Rng rng = substream(6, 0);
    Instance inst = build_instance(make_extremal({Family::MinDegreeRandom, 50, 0.5}, &rng), 1, rng);
    VertexMask b1(50, 0);
    for (int v = 0; v < 50; ++v) b1[v] = uniform_below(rng, 2);
    EdgeKeySet D;
    for (int x = 0; x < 50; x += 2)
        for (int y = 1; y < 50; y += 5) {
            std::set<Edge> want;
            for (auto [z, zp] : inst.G.edges()) {
                if (!b1[z] || !b1[zp]) continue;
                bool ok = inst.H.has_edge(x, z) && inst.H.has_edge(y, z) && inst.H.has_edge(x, zp) &&
                          inst.H.has_edge(y, zp);
                if (ok) want.insert({z, zp});
            }
            auto got = common_b1_edges(inst, x, y, b1, D);
            CHECK(std::set<Edge>(got.begin(), got.end()) == want);
        }
}

TEST_CASE("save and load round trip") {
    Rng rng = substream(7, 0);
    Instance inst = build_instance(make_extremal({Family::Complete, 30, 0.0}), 1, rng);
    auto dir = std::filesystem::temp_directory_path() / "rpg_instance_test";
    std::filesystem::create_directories(dir);
    std::string prefix = (dir / "inst").string();
    save_instance(prefix, inst, {30, 1, 0.0, 99, "complete"});
    InstanceMeta meta;
    Instance back = load_instance(prefix, &meta);
    CHECK(back.H.edges() == inst.H.edges());
    CHECK(back.G.edges() == inst.G.edges());
    CHECK(back.d == 1);
    CHECK(meta.seed == 99);
    CHECK(meta.family == "complete");
    CHECK_THROWS_AS(load_instance((dir / "missing").string()), Error);
}
