#include "rpg/path_cycle.hpp"

#include <algorithm>
#include <cstdlib>

namespace rpg {

const char* to_string(PcStatus s) {
    switch (s) {
        case PcStatus::Ok: return "Ok";
        case PcStatus::DegreeViolation: return "DegreeViolation";
        case PcStatus::Inactive: return "Inactive";
        case PcStatus::MissingEdge: return "MissingEdge";
        case PcStatus::NonIsolated: return "NonIsolated";
        case PcStatus::ShortCycle: return "ShortCycle";
        case PcStatus::SelfLoop: return "SelfLoop";
        case PcStatus::DuplicateEdge: return "DuplicateEdge";
        case PcStatus::OutOfRange: return "OutOfRange";
    }
    return "?";
}

const char* to_string(CompKind k) {
    switch (k) {
        case CompKind::Isolated: return "isolated";
        case CompKind::Path: return "path";
        case CompKind::Cycle: return "cycle";
    }
    return "?";
}

PathCycleSystem::PathCycleSystem(int n)
    : nb_(n, {-1, -1}), comp_(n, -1), active_(n, 1), pos_(n, 0) {
    comps_.reserve(n);
    for (int v = 0; v < n; ++v) {
        int c = new_comp();
        comps_[c].kind = CompKind::Isolated;
        comps_[c].end0 = comps_[c].end1 = v;
        comps_[c].size = 1;
        comp_[v] = c;
    }
    paths_ = n;
    active_count_ = n;
}

int PathCycleSystem::new_comp() {
    int c;
    if (!free_ids_.empty()) {
        c = free_ids_.back();
        free_ids_.pop_back();
    } else {
        c = static_cast<int>(comps_.size());
        comps_.emplace_back();
    }
    comps_[c] = Comp{};
    comps_[c].alive = true;
    return c;
}

void PathCycleSystem::free_comp(int c) {
    comps_[c].alive = false;
    free_ids_.push_back(c);
}

Vertex PathCycleSystem::other_neighbor(Vertex v, Vertex not_this) const {
    const auto& a = nb_[v];
    if (a[0] >= 0 && a[0] != not_this) return a[0];
    if (a[1] >= 0 && a[1] != not_this) return a[1];
    return -1;
}

bool PathCycleSystem::has_edge(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n() || v >= n()) return false;
    return nb_[u][0] == v || nb_[u][1] == v;
}

void PathCycleSystem::link(Vertex u, Vertex v) {
    (nb_[u][0] < 0 ? nb_[u][0] : nb_[u][1]) = v;
    (nb_[v][0] < 0 ? nb_[v][0] : nb_[v][1]) = u;
}

void PathCycleSystem::unlink(Vertex u, Vertex v) {
    (nb_[u][0] == v ? nb_[u][0] : nb_[u][1]) = -1;
    (nb_[v][0] == u ? nb_[v][0] : nb_[v][1]) = -1;
}

Vertex PathCycleSystem::step(Vertex cur, Vertex prev) const {
    const auto& a = nb_[cur];
    if (a[0] >= 0 && a[0] != prev) return a[0];
    if (a[1] >= 0 && a[1] != prev) return a[1];
    return -1;
}

// Relabels the path containing `start` (walking from start, which must be an
// end of it) to component c. Returns the far end.
int PathCycleSystem::relabel_path_from(Vertex start, int c) {
    Vertex prev = -1, cur = start, last = start;
    while (cur >= 0) {
        comp_[cur] = c;
        last = cur;
        Vertex nx = step(cur, prev);
        prev = cur;
        cur = nx;
    }
    return last;
}

PcStatus PathCycleSystem::insert_edge(Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u >= n() || v >= n()) return PcStatus::OutOfRange;
    if (u == v) return PcStatus::SelfLoop;
    if (!active(u) || !active(v)) return PcStatus::Inactive;
    if (degree(u) >= 2 || degree(v) >= 2) return PcStatus::DegreeViolation;
    if (has_edge(u, v)) return PcStatus::DuplicateEdge;
    int cu = comp_[u], cv = comp_[v];
    if (cu == cv) {
        // u and v are the two ends of one path.
        if (comps_[cu].size < 3) return PcStatus::ShortCycle;
        link(u, v);
        comps_[cu].kind = CompKind::Cycle;
        comps_[cu].end0 = u;
        comps_[cu].end1 = -1;
        comps_[cu].dirty = true;
        --paths_;
        --nondeg_paths_;
        ++cycles_;
        return PcStatus::Ok;
    }
    auto far_end = [&](int c, Vertex e) {
        const Comp& k = comps_[c];
        return k.end0 == e ? k.end1 : k.end0;
    };
    Vertex fu = far_end(cu, u), fv = far_end(cv, v);
    int nd_before = (comps_[cu].kind == CompKind::Path) + (comps_[cv].kind == CompKind::Path);
    int big = cu, small = cv;
    Vertex small_start = v;
    if (comps_[cu].size < comps_[cv].size) {
        big = cv;
        small = cu;
        small_start = u;
    }
    relabel_path_from(small_start, big);
    comps_[big].size += comps_[small].size;
    free_comp(small);
    link(u, v);
    comps_[big].kind = CompKind::Path;
    comps_[big].end0 = fu;
    comps_[big].end1 = fv;
    comps_[big].dirty = true;
    --paths_;
    nondeg_paths_ += 1 - nd_before;
    return PcStatus::Ok;
}

PcStatus PathCycleSystem::delete_edge(Vertex u, Vertex v) {
    if (!has_edge(u, v)) return PcStatus::MissingEdge;
    int c = comp_[u];
    unlink(u, v);
    Comp& k = comps_[c];
    if (k.kind == CompKind::Cycle) {
        k.kind = CompKind::Path;
        k.end0 = u;
        k.end1 = v;
        k.dirty = true;
        --cycles_;
        ++paths_;
        ++nondeg_paths_;
        return PcStatus::Ok;
    }
    // Path splits in two: walk both halves in lockstep to find the shorter one.
    Vertex a = u, pa = -1, b = v, pb = -1;
    int la = 1, lb = 1;
    bool a_done = false, b_done = false;
    for (;;) {
        Vertex na = step(a, pa);
        if (na < 0) { a_done = true; break; }
        Vertex nbv = step(b, pb);
        if (nbv < 0) { b_done = true; break; }
        pa = a; a = na; ++la;
        pb = b; b = nbv; ++lb;
    }
    (void)b_done;
    Vertex small_start = a_done ? u : v;
    Vertex big_near = a_done ? v : u;
    int total = k.size;
    Vertex old0 = k.end0, old1 = k.end1;
    int nc = new_comp();
    Comp& kk = comps_[c];  // comps_ may have reallocated
    Vertex small_far = relabel_path_from(small_start, nc);
    int small_size = 0;
    {
        Vertex prev = -1, cur = small_start;
        while (cur >= 0) { ++small_size; Vertex nx = step(cur, prev); prev = cur; cur = nx; }
    }
    Vertex big_far = (small_far == old0) ? old1 : old0;
    comps_[nc].size = small_size;
    comps_[nc].end0 = small_start;
    comps_[nc].end1 = small_far;
    comps_[nc].kind = small_size == 1 ? CompKind::Isolated : CompKind::Path;
    comps_[nc].dirty = true;
    kk.size = total - small_size;
    kk.end0 = big_near;
    kk.end1 = big_far;
    kk.kind = kk.size == 1 ? CompKind::Isolated : CompKind::Path;
    kk.dirty = true;
    ++paths_;
    nondeg_paths_ += -1 + (comps_[nc].kind == CompKind::Path) + (kk.kind == CompKind::Path);
    return PcStatus::Ok;
}

PcStatus PathCycleSystem::deactivate(Vertex v) {
    if (v < 0 || v >= n()) return PcStatus::OutOfRange;
    if (!active(v)) return PcStatus::Inactive;
    if (degree(v) > 0) return PcStatus::NonIsolated;
    free_comp(comp_[v]);
    comp_[v] = -1;
    active_[v] = 0;
    --paths_;
    --active_count_;
    return PcStatus::Ok;
}

SpliceResult PathCycleSystem::splice(std::span<const Edge> remove, std::span<const Edge> add) {
    SpliceResult r;
    int p0 = paths_, nd0 = nondeg_paths_, c0 = cycles_;
    std::size_t removed = 0, added = 0;
    auto rollback = [&]() {
        for (std::size_t i = added; i-- > 0;) delete_edge(add[i].first, add[i].second);
        for (std::size_t i = removed; i-- > 0;) insert_edge(remove[i].first, remove[i].second);
    };
    for (; removed < remove.size(); ++removed) {
        PcStatus s = delete_edge(remove[removed].first, remove[removed].second);
        if (s != PcStatus::Ok) {
            r.status = s;
            r.failed_op = static_cast<int>(removed);
            rollback();
            return r;
        }
    }
    for (; added < add.size(); ++added) {
        PcStatus s = insert_edge(add[added].first, add[added].second);
        if (s != PcStatus::Ok) {
            r.status = s;
            r.failed_op = static_cast<int>(remove.size() + added);
            rollback();
            return r;
        }
    }
    r.d_paths = paths_ - p0;
    r.d_nondegenerate_paths = nondeg_paths_ - nd0;
    r.d_cycles = cycles_ - c0;
    r.d_components = r.d_paths + r.d_cycles;
    return r;
}

void PathCycleSystem::ensure_positions(int c) const {
    const Comp& k = comps_[c];
    if (!k.dirty) return;
    Vertex prev = -1, cur = k.end0;
    int i = 0;
    while (cur >= 0 && i < k.size) {
        pos_[cur] = i++;
        Vertex nx = step(cur, prev);
        prev = cur;
        cur = nx;
    }
    k.dirty = false;
}

int PathCycleSystem::dist_along(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n() || v >= n()) return kInf;
    if (!active(u) || !active(v)) return kInf;
    if (u == v) return 0;
    int c = comp_[u];
    if (c != comp_[v]) return kInf;
    ensure_positions(c);
    int d = std::abs(pos_[u] - pos_[v]);
    if (comps_[c].kind == CompKind::Cycle) d = std::min(d, comps_[c].size - d);
    return d;
}

std::array<Vertex, 2> PathCycleSystem::endpoints(int c) const {
    const Comp& k = comps_[c];
    if (k.kind == CompKind::Cycle) return {-1, -1};
    return {k.end0, k.end1};
}

std::vector<int> PathCycleSystem::components() const {
    std::vector<int> out;
    for (int c = 0; c < static_cast<int>(comps_.size()); ++c)
        if (comps_[c].alive) out.push_back(c);
    return out;
}

std::vector<Vertex> PathCycleSystem::walk(int c) const {
    const Comp& k = comps_[c];
    std::vector<Vertex> out;
    out.reserve(k.size);
    Vertex prev = -1, cur = k.end0;
    while (cur >= 0 && static_cast<int>(out.size()) < k.size) {
        out.push_back(cur);
        Vertex nx = step(cur, prev);
        prev = cur;
        cur = nx;
    }
    return out;
}

int PathCycleSystem::position(Vertex v) const {
    ensure_positions(comp_[v]);
    return pos_[v];
}

std::vector<Edge> PathCycleSystem::edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n(); ++u)
        for (Vertex v : nb_[u])
            if (v > u) out.emplace_back(u, v);
    return out;
}

}  // namespace rpg
