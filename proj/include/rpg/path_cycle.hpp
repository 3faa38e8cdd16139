#pragma once
// Dynamic max-degree-2 graph kept as vertex-disjoint paths and cycles.
//
// Component labels are maintained incrementally: a join relabels the smaller
// side, a split walks both halves in lockstep and relabels the shorter one.
// Along-component positions are rebuilt lazily per component on the first
// distance query after a mutation.

#include <array>
#include <climits>
#include <span>
#include <vector>

#include "rpg/graph.hpp"

namespace rpg {

enum class CompKind { Isolated, Path, Cycle };

enum class PcStatus {
    Ok,
    DegreeViolation,
    Inactive,
    MissingEdge,
    NonIsolated,
    ShortCycle,
    SelfLoop,
    DuplicateEdge,
    OutOfRange,
};

const char* to_string(PcStatus s);
const char* to_string(CompKind k);

struct SpliceResult {
    PcStatus status = PcStatus::Ok;
    int failed_op = -1;  // index into remove, then add (offset by remove.size())
    int d_paths = 0;     // includes length-0 paths
    int d_nondegenerate_paths = 0;
    int d_cycles = 0;
    int d_components = 0;
    bool ok() const { return status == PcStatus::Ok; }
};

class PathCycleSystem {
public:
    static constexpr int kInf = INT_MAX;

    PathCycleSystem() = default;
    explicit PathCycleSystem(int n);

    int n() const { return static_cast<int>(nb_.size()); }
    bool active(Vertex v) const { return active_[v] != 0; }
    int degree(Vertex v) const { return (nb_[v][0] >= 0) + (nb_[v][1] >= 0); }
    const std::array<Vertex, 2>& neighbors(Vertex v) const { return nb_[v]; }
    // The neighbour of v other than `not_this` (-1 when absent).
    Vertex other_neighbor(Vertex v, Vertex not_this) const;
    bool has_edge(Vertex u, Vertex v) const;

    PcStatus insert_edge(Vertex u, Vertex v);
    PcStatus delete_edge(Vertex u, Vertex v);
    PcStatus deactivate(Vertex v);  // "move v to S"
    SpliceResult splice(std::span<const Edge> remove, std::span<const Edge> add);

    int dist_along(Vertex u, Vertex v) const;

    int component(Vertex v) const { return comp_[v]; }
    CompKind kind(int c) const { return comps_[c].kind; }
    int comp_size(int c) const { return comps_[c].size; }
    // Path endpoints; a length-0 path lists its vertex twice. Cycles: {-1,-1}.
    std::array<Vertex, 2> endpoints(int c) const;
    std::vector<int> components() const;
    // Vertices in order: from endpoints(c)[0] for paths, from an anchor for cycles.
    std::vector<Vertex> walk(int c) const;
    int position(Vertex v) const;  // index of v in walk(component(v))

    int path_count() const { return paths_; }
    int nondegenerate_path_count() const { return nondeg_paths_; }
    int cycle_count() const { return cycles_; }
    int component_count() const { return paths_ + cycles_; }
    int active_count() const { return active_count_; }
    std::vector<Edge> edges() const;

private:
    struct Comp {
        CompKind kind = CompKind::Isolated;
        Vertex end0 = -1, end1 = -1;  // path ends, or anchor in end0 for cycles
        int size = 0;
        bool alive = false;
        mutable bool dirty = true;
    };

    int new_comp();
    void free_comp(int c);
    void link(Vertex u, Vertex v);
    void unlink(Vertex u, Vertex v);
    Vertex step(Vertex cur, Vertex prev) const;
    int relabel_path_from(Vertex start, int c);
    void ensure_positions(int c) const;
    static bool pathlike(CompKind k) { return k != CompKind::Cycle; }

    std::vector<std::array<Vertex, 2>> nb_;
    std::vector<int> comp_;
    std::vector<char> active_;
    mutable std::vector<int> pos_;
    std::vector<Comp> comps_;
    std::vector<int> free_ids_;
    int paths_ = 0, nondeg_paths_ = 0, cycles_ = 0, active_count_ = 0;
};

}  // namespace rpg
