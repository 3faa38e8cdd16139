#include "rpg/matching.hpp"

#include <queue>

namespace rpg {

std::vector<Edge> Matching::edges() const {
    std::vector<Edge> out;
    for (Vertex v = 0; v < static_cast<Vertex>(mate.size()); ++v)
        if (mate[v] > v) out.emplace_back(v, mate[v]);
    return out;
}

bool is_matching(const StaticGraph& g, const std::vector<Vertex>& mate) {
    if (static_cast<int>(mate.size()) != g.n()) return false;
    for (Vertex v = 0; v < g.n(); ++v) {
        Vertex u = mate[v];
        if (u < 0) continue;
        if (u >= g.n() || u == v || mate[u] != v || !g.has_edge(u, v)) return false;
    }
    return true;
}

namespace {

class Blossom {
public:
    explicit Blossom(const StaticGraph& g)
        : g_(g), n_(g.n()), match_(n_, -1), parent_(n_), base_(n_), used_(n_), in_blossom_(n_),
          dead_(n_, 0), seen_(n_) {}

    void greedy() {
        for (Vertex v = 0; v < n_; ++v) {
            if (match_[v] >= 0) continue;
            for (Vertex u : g_.neighbors(v))
                if (match_[u] < 0) {
                    match_[v] = u;
                    match_[u] = v;
                    break;
                }
        }
    }

    void run() {
        for (Vertex r = 0; r < n_; ++r) {
            if (match_[r] >= 0 || dead_[r]) continue;
            Vertex end = search(r);
            if (end < 0) {
                for (Vertex v = 0; v < n_; ++v)
                    if (used_[v] || parent_[v] >= 0) dead_[v] = 1;
                continue;
            }
            while (end >= 0) {
                Vertex pv = parent_[end], next = match_[pv];
                match_[end] = pv;
                match_[pv] = end;
                end = next;
            }
        }
    }

    const std::vector<Vertex>& mate() const { return match_; }

private:
    Vertex lca(Vertex a, Vertex b) {
        std::fill(seen_.begin(), seen_.end(), 0);
        for (;;) {
            a = base_[a];
            seen_[a] = 1;
            if (match_[a] < 0) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen_[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(Vertex v, Vertex b, Vertex child) {
        while (base_[v] != b) {
            in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    Vertex search(Vertex root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (Vertex i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = 1;
        std::queue<Vertex> q;
        q.push(root);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (Vertex to : g_.neighbors(v)) {
                if (dead_[to] || base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] >= 0 && parent_[match_[to]] >= 0)) {
                    Vertex cur = lca(v, to);
                    std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (Vertex i = 0; i < n_; ++i) {
                        if (!in_blossom_[base_[i]]) continue;
                        base_[i] = cur;
                        if (!used_[i]) {
                            used_[i] = 1;
                            q.push(i);
                        }
                    }
                } else if (parent_[to] < 0) {
                    parent_[to] = v;
                    if (match_[to] < 0) return to;
                    used_[match_[to]] = 1;
                    q.push(match_[to]);
                }
            }
        }
        return -1;
    }

    const StaticGraph& g_;
    int n_;
    std::vector<Vertex> match_, parent_, base_;
    std::vector<char> used_, in_blossom_, dead_, seen_;
};

}  // namespace

Matching max_matching(const StaticGraph& g) {
    Blossom b(g);
    b.greedy();
    b.run();
    Matching m;
    m.mate = b.mate();
    for (Vertex v = 0; v < g.n(); ++v)
        if (m.mate[v] > v) ++m.size;
    return m;
}

}  // namespace rpg
