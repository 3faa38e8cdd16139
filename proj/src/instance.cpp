#include "rpg/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "rpg/config_model.hpp"

namespace rpg {

Instance::Instance(StaticGraph h, StaticGraph g, int degree)
    : H(std::move(h)), G(std::move(g)), d(degree) {
    if (H.n() != G.n()) throw Error("SizeMismatch", "H and G have different vertex counts");
    alpha = H.n() == 0 ? 0.0 : static_cast<double>(H.min_degree()) / H.n();
    host = graph_union(H, G);
    hbits = AdjacencyBits(H);
}

Instance build_instance(StaticGraph H, int d, Rng& rng) {
    int n = H.n();
    StaticGraph G = sample_simple_regular(n, d, rng);
    return Instance(std::move(H), std::move(G), d);
}

std::vector<Edge> available_edges(const Instance& inst, Vertex x, Vertex y, const VertexMask& exclude,
                                  const PathCycleSystem* sys, const EdgeKeySet& D) {
    std::vector<Edge> out;
    auto excluded = [&](Vertex v) { return !exclude.empty() && exclude[v]; };
    for (Vertex z : inst.H.neighbors(x)) {
        if (excluded(z)) continue;
        if (sys && !sys->active(z)) continue;
        for (Vertex zp : inst.G.neighbors(z)) {
            if (excluded(zp) || !inst.h_adj(y, zp)) continue;
            if (sys && !sys->has_edge(z, zp)) continue;
            if (D.count(edge_key(z, zp))) continue;
            out.emplace_back(z, zp);
        }
    }
    return out;
}

std::vector<Edge> common_b1_edges(const Instance& inst, Vertex x, Vertex y, const VertexMask& in_b1,
                                  const EdgeKeySet& D) {
    std::vector<Edge> out;
    for (Vertex z : inst.H.neighbors(x)) {
        if (!in_b1[z] || !inst.h_adj(y, z)) continue;
        for (Vertex zp : inst.G.neighbors(z)) {
            if (zp <= z || !in_b1[zp]) continue;
            if (!inst.h_adj(x, zp) || !inst.h_adj(y, zp)) continue;
            if (D.count(edge_key(z, zp))) continue;
            out.emplace_back(z, zp);
        }
    }
    return out;
}

const char* to_string(Family f) {
    switch (f) {
        case Family::Complete: return "complete";
        case Family::UnbalancedBipartite: return "unbalanced-bipartite";
        case Family::LognBipartite: return "logn-bipartite";
        case Family::MinDegreeRandom: return "min-degree-random";
        case Family::Empty: return "empty";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::Complete, Family::UnbalancedBipartite, Family::LognBipartite,
                     Family::MinDegreeRandom, Family::Empty})
        if (s == to_string(f)) return f;
    throw Error("BadParams", "unknown family '" + s + "'");
}

int bipartite_small_side(const ExtremalSpec& spec) {
    if (spec.family == Family::UnbalancedBipartite)
        return static_cast<int>(std::floor(spec.alpha * spec.n + 1e-9));
    if (spec.family == Family::LognBipartite)
        return static_cast<int>(std::floor(std::log(static_cast<double>(spec.n)) / 5.0));
    return 0;
}

namespace {

StaticGraph complete_bipartite(int n, int a) {
    std::vector<Edge> e;
    e.reserve(static_cast<std::size_t>(a) * (n - a));
    for (int u = 0; u < a; ++u)
        for (int v = a; v < n; ++v) e.emplace_back(u, v);
    return StaticGraph(n, e);
}

// Random graph at density alpha + 0.05, then deficient vertices are topped up
// with random non-neighbours, preferring other deficient vertices.
StaticGraph min_degree_random(int n, double alpha, Rng& rng) {
    const int target = static_cast<int>(std::ceil(alpha * n - 1e-9));
    if (target > n - 1) throw Error("BadParams", "minimum degree target exceeds n-1");
    const double p = std::min(1.0, alpha + 0.05);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::vector<int> deg(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) {
                adj[u][v] = adj[v][u] = 1;
                ++deg[u];
                ++deg[v];
            }
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    shuffle(order, rng);
    for (int v : order) {
        if (deg[v] >= target) continue;
        std::vector<int> needy, rest;
        for (int u = 0; u < n; ++u) {
            if (u == v || adj[v][u]) continue;
            (deg[u] < target ? needy : rest).push_back(u);
        }
        shuffle(needy, rng);
        shuffle(rest, rng);
        needy.insert(needy.end(), rest.begin(), rest.end());
        for (int u : needy) {
            if (deg[v] >= target) break;
            adj[v][u] = adj[u][v] = 1;
            ++deg[v];
            ++deg[u];
        }
    }
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (adj[u][v]) e.emplace_back(u, v);
    return StaticGraph(n, e);
}

}  // namespace

StaticGraph make_extremal(const ExtremalSpec& spec, Rng* rng) {
    const int n = spec.n;
    if (n < 1) throw Error("BadParams", "n must be positive");
    switch (spec.family) {
        case Family::Complete: {
            std::vector<Edge> e;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
            return StaticGraph(n, e);
        }
        case Family::Empty:
            return StaticGraph(n);
        case Family::UnbalancedBipartite: {
            if (!(spec.alpha > 0.0 && spec.alpha < 0.5))
                throw Error("BadParams", "unbalanced-bipartite needs 0 < alpha < 1/2");
            int a = bipartite_small_side(spec);
            if (a < 1) throw Error("BadParams", "alpha*n < 1 leaves the small side empty");
            return complete_bipartite(n, a);
        }
        case Family::LognBipartite: {
            int a = bipartite_small_side(spec);
            if (a < 1) throw Error("BadParams", "ln(n)/5 < 1 leaves the small side empty");
            return complete_bipartite(n, a);
        }
        case Family::MinDegreeRandom: {
            if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
                throw Error("BadParams", "min-degree-random needs 0 < alpha < 1");
            if (!rng) throw Error("BadParams", "min-degree-random needs a random source");
            return min_degree_random(n, spec.alpha, *rng);
        }
    }
    throw Error("BadParams", "unknown family");
}

void save_instance(const std::string& prefix, const Instance& inst, const InstanceMeta& meta) {
    write_edge_list_file(prefix + ".H.txt", inst.H);
    write_edge_list_file(prefix + ".G.txt", inst.G);
    nlohmann::json j = {{"n", meta.n},       {"d", meta.d},       {"alpha", meta.alpha},
                        {"seed", meta.seed}, {"family", meta.family}};
    std::ofstream out(prefix + ".json");
    if (!out) throw Error("IOError", "cannot open " + prefix + ".json");
    out << j.dump(2) << '\n';
    if (!out) throw Error("IOError", "write failed for " + prefix + ".json");
}

Instance load_instance(const std::string& prefix, InstanceMeta* meta) {
    StaticGraph h = read_edge_list_file(prefix + ".H.txt");
    StaticGraph g = read_edge_list_file(prefix + ".G.txt");
    std::ifstream in(prefix + ".json");
    if (!in) throw Error("IOError", "cannot open " + prefix + ".json");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("ParseError", std::string("sidecar: ") + e.what());
    }
    int d = j.value("d", 0);
    if (meta) {
        meta->n = j.value("n", 0);
        meta->d = d;
        meta->alpha = j.value("alpha", 0.0);
        meta->seed = j.value("seed", std::uint64_t{0});
        meta->family = j.value("family", std::string());
    }
    return Instance(std::move(h), std::move(g), d);
}

}  // namespace rpg
