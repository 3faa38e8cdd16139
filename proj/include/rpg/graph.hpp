#pragma once
// Static simple graphs, multigraphs and the edge-list text format.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rpg {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Base for all precondition / usage errors raised by the library.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

inline std::uint64_t edge_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

class StaticGraph {
public:
    StaticGraph() = default;
    explicit StaticGraph(int n) : adj_(n) {}
    // Duplicate edges are merged; loops are rejected.
    StaticGraph(int n, const std::vector<Edge>& edges);

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return m_; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    bool has_edge(Vertex u, Vertex v) const;
    int min_degree() const;
    std::vector<Edge> edges() const;  // u < v, lexicographic

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t m_ = 0;
};

StaticGraph graph_union(const StaticGraph& a, const StaticGraph& b);

// Dense bit adjacency for O(1) membership on the hot paths.
class AdjacencyBits {
public:
    AdjacencyBits() = default;
    explicit AdjacencyBits(const StaticGraph& g);
    bool test(Vertex u, Vertex v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1U;
    }

private:
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Loops allowed; a loop contributes 2 to the degree of its vertex.
class Multigraph {
public:
    explicit Multigraph(int n) : n_(n), deg_(n, 0) {}
    void add_edge(Vertex u, Vertex v);
    int n() const { return n_; }
    int degree(Vertex v) const { return deg_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    int loop_count() const;
    int parallel_pair_count() const;  // extra copies beyond the first
    bool is_simple() const { return loop_count() == 0 && parallel_pair_count() == 0; }
    int component_count() const;
    StaticGraph to_simple() const;  // throws Error if not simple

private:
    int n_;
    std::vector<int> deg_;
    std::vector<Edge> edges_;
};

// Edge-list format: "n m" header, then m lines "u v" with u < v, LF endings.
void write_edge_list(std::ostream& out, const StaticGraph& g);
StaticGraph read_edge_list(std::istream& in);
void write_edge_list_file(const std::string& path, const StaticGraph& g);
StaticGraph read_edge_list_file(const std::string& path);

}  // namespace rpg
