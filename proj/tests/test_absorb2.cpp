#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rpg/absorb2.hpp"
#include "rpg/verify.hpp"
#include "rpg/matching.hpp"

using namespace rpg;

namespace {

Instance complete_instance(int n, int d, std::uint64_t seed) {
    Rng rng = substream(seed, 0);
    return build_instance(make_extremal({Family::Complete, n, 0.0}), d, rng);
}

// Independent certificate check: distinct vertices, host edges cyclically.
bool is_cycle_in(const StaticGraph& host, const std::vector<Vertex>& c) {
    std::set<Vertex> seen(c.begin(), c.end());
    if (seen.size() != c.size() || c.size() < 3) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!host.has_edge(c[i], c[(i + 1) % c.size()])) return false;
    return true;
}

}  // namespace

TEST_CASE("absorber count") {
    CHECK(absorber_count(100, 0.5) == 2);
    CHECK(absorber_count(100000, 0.5) == 25);
    CHECK(absorber_count(40000, 0.45) == 8);
}

TEST_CASE("absorbing path structure") {
    Instance inst = complete_instance(200, 2, 1);
    Rng rng = substream(1, 1);
    Absorb2Options opt;
    MergeTrace trace;
    AbsorberState st = build_absorber(inst, &rng, opt, &trace);
    const auto& P = st.path;
    REQUIRE(P.reserve.size() == P.absorb_edges.size());
    std::set<Vertex> used(P.vertices.begin(), P.vertices.end());
    CHECK(used.size() == P.vertices.size());
    for (std::size_t j = 0; j < P.reserve.size(); ++j) {
        Vertex u = P.reserve[j];
        auto [z, zp] = P.absorb_edges[j];
        CHECK(inst.G.has_edge(z, zp));
        CHECK(inst.H.has_edge(u, z));
        CHECK(inst.H.has_edge(u, zp));
        CHECK(!used.count(u));
        CHECK(st.blocked[u]);
        CHECK(!st.sys.active(u));
    }
    for (auto [a, b] : P.edges()) CHECK(st.sys.has_edge(a, b));
    for (auto [a, b] : P.connectors) CHECK(inst.G.has_edge(a, b));
    for (Vertex v : P.vertices) CHECK(st.blocked[v]);
    CHECK(trace.initial_components == st.sys.component_count());
}

TEST_CASE("merging ends in one cycle through the absorbing path") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Instance inst = complete_instance(150, 2, 10 + seed);
        Rng rng = substream(seed, 2);
        Absorb2Options opt;
        MergeTrace trace;
        AbsorberState st = build_absorber(inst, &rng, opt, &trace);
        merge_to_cycle(st, inst, &rng, trace, opt);
        CHECK(st.sys.component_count() == 1);
        CHECK(st.sys.cycle_count() == 1);
        for (auto [a, b] : st.path.edges()) CHECK(st.sys.has_edge(a, b));
        for (auto [a, b] : st.sys.edges()) CHECK(inst.host.has_edge(a, b));
        CHECK(st.sys.active_count() + static_cast<int>(st.path.reserve.size()) == 150);
        // a path-joining step may open a cycle into a path, so only the paths drop
        for (const auto& s : trace.steps)
            if (s.tag == "1") {
                CHECK(s.paths_after == s.paths_before - 1);
                CHECK(s.components_after <= s.components_before + 1);
            }
        CHECK(trace.case1_violations == 0);
        CHECK(trace.two_step_violations == 0);
        CHECK(trace.removal_violations == 0);
    }
}

TEST_CASE("witness on complete host covers every length") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Instance inst = complete_instance(80, 2, 20 + seed);
        Rng rng = substream(seed, 3);
        WitnessResult w = pancyclic_witness(inst, &rng);
        CHECK(w.complete(80));
        for (const auto& [k, c] : w.cycles) {
            CHECK(static_cast<int>(c.size()) == k);
            CHECK(is_cycle_in(inst.host, c));
        }
    }
}

TEST_CASE("deterministic mode and seeded runs are reproducible") {
    Instance inst = complete_instance(90, 2, 30);
    Absorb2Options det;
    det.randomized = false;
    WitnessResult a = pancyclic_witness(inst, nullptr, det);
    WitnessResult b = pancyclic_witness(inst, nullptr, det);
    CHECK(a.cycles == b.cycles);
    Rng r1 = substream(4, 4), r2 = substream(4, 4);
    CHECK(pancyclic_witness(inst, &r1).cycles == pancyclic_witness(inst, &r2).cycles);
}

TEST_CASE("sparse host fails gracefully") {
    Instance inst = complete_instance(40, 2, 40);
    Rng rng = substream(5, 0);
    Instance empty = build_instance(make_extremal({Family::Empty, 40, 0.0}), 2, rng);
    WitnessResult w = pancyclic_witness(empty, &rng);
    CHECK(!w.complete(40));
    CHECK(!w.failures.empty());
    for (const auto& [k, c] : w.cycles) CHECK(is_cycle_in(empty.host, c));
}

TEST_CASE("augmenting matching preconditions") {
    Instance inst = complete_instance(60, 1, 50);
    Matching m = max_matching(inst.H);
    auto edges = m.edges();
    CHECK_NOTHROW(check_augmenting_matching(inst, edges));
    auto overlap = edges;
    overlap.push_back({edges[0].first, edges[1].first});
    CHECK_THROWS_AS(check_augmenting_matching(inst, overlap), Error);
    std::vector<Edge> few(edges.begin(), edges.begin() + 10);
    CHECK_THROWS_AS(check_augmenting_matching(inst, few), Error);
    Rng rng = substream(6, 0);
    Absorb2Options opt;
    opt.matching = &edges;
    WitnessResult w = pancyclic_witness(inst, &rng, opt);
    CHECK(w.complete(60));
    for (const auto& [k, c] : w.cycles) CHECK(is_cycle_in(inst.host, c));
}

TEST_CASE("small completions agree with brute force") {
    int successes = 0;
    for (int n : {12, 14, 16})
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            Rng rng = substream(900 + n, seed);
            Family f = seed % 2 ? Family::MinDegreeRandom : Family::Complete;
            Instance inst = build_instance(make_extremal({f, n, 0.6}, &rng), 2, rng);
            WitnessResult w = pancyclic_witness(inst, &rng);
            auto lengths = cycle_lengths_bruteforce(inst.host);
            for (const auto& [k, c] : w.cycles) CHECK(lengths[k]);
            if (w.complete(n)) {
                ++successes;
                CHECK(is_pancyclic_bruteforce(inst.host));
            }
        }
    CHECK(successes >= 3);
}
