#include "rpg/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace rpg {

StaticGraph::StaticGraph(int n, const std::vector<Edge>& edges) : adj_(n) {
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw Error("BadEdge", "vertex out of range");
        if (u == v) throw Error("BadEdge", "loop in simple graph");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    m_ = 0;
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        m_ += a.size();
    }
    m_ /= 2;
}

bool StaticGraph::has_edge(Vertex u, Vertex v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

int StaticGraph::min_degree() const {
    int best = n() == 0 ? 0 : degree(0);
    for (int v = 1; v < n(); ++v) best = std::min(best, degree(v));
    return best;
}

std::vector<Edge> StaticGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (int u = 0; u < n(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

StaticGraph graph_union(const StaticGraph& a, const StaticGraph& b) {
    if (a.n() != b.n()) throw Error("SizeMismatch", "union of graphs on different vertex sets");
    auto e = a.edges();
    auto f = b.edges();
    e.insert(e.end(), f.begin(), f.end());
    return StaticGraph(a.n(), e);
}

AdjacencyBits::AdjacencyBits(const StaticGraph& g)
    : words_((static_cast<std::size_t>(g.n()) + 63) / 64),
      bits_(words_ * static_cast<std::size_t>(g.n()), 0) {
    for (int u = 0; u < g.n(); ++u)
        for (Vertex v : g.neighbors(u))
            bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
}

void Multigraph::add_edge(Vertex u, Vertex v) {
    edges_.emplace_back(std::min(u, v), std::max(u, v));
    deg_[u] += 1;
    deg_[v] += 1;
}

int Multigraph::loop_count() const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                          [](const Edge& e) { return e.first == e.second; }));
}

int Multigraph::parallel_pair_count() const {
    std::unordered_map<std::uint64_t, int> seen;
    int extra = 0;
    for (auto [u, v] : edges_) {
        if (u == v) continue;
        if (seen[edge_key(u, v)]++ > 0) ++extra;
    }
    return extra;
}

int Multigraph::component_count() const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = n_;
    for (auto [u, v] : edges_) {
        int a = find(u), b = find(v);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps;
}

StaticGraph Multigraph::to_simple() const {
    if (!is_simple()) throw Error("NotSimple", "multigraph has loops or parallel edges");
    return StaticGraph(n_, edges_);
}

void write_edge_list(std::ostream& out, const StaticGraph& g) {
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

StaticGraph read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("ParseError", "missing header");
    std::istringstream hdr(line);
    long long n = -1, m = -1;
    if (!(hdr >> n >> m) || n < 0 || m < 0) throw Error("ParseError", "bad header '" + line + "'");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line)) throw Error("ParseError", "expected " + std::to_string(m) + " edges");
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) throw Error("ParseError", "bad edge line '" + line + "'");
        if (u < 0 || v < 0 || u >= n || v >= n) throw Error("ParseError", "vertex out of range");
        if (u >= v) throw Error("ParseError", "edge must satisfy u < v: '" + line + "'");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    StaticGraph g(static_cast<int>(n), edges);
    if (g.edge_count() != edges.size()) throw Error("ParseError", "duplicate edges");
    return g;
}

void write_edge_list_file(const std::string& path, const StaticGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("IOError", "cannot open " + path + " for writing");
    write_edge_list(out, g);
    if (!out) throw Error("IOError", "write failed for " + path);
}

StaticGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IOError", "cannot open " + path);
    return read_edge_list(in);
}

}  // namespace rpg
