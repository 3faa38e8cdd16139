#include "rpg/absorb2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>
#include <unordered_map>

#include "rpg/verify.hpp"

namespace rpg {

std::vector<Edge> AbsorbingPath::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) out.emplace_back(vertices[i], vertices[i + 1]);
    return out;
}

std::map<std::string, int> MergeTrace::case_counts() const {
    std::map<std::string, int> out;
    for (const auto& s : steps) ++out[s.tag];
    return out;
}

int absorber_count(int n, double alpha) {
    return std::max(2, static_cast<int>(std::floor(alpha * alpha * n / 1000.0)));
}

void check_augmenting_matching(const Instance& inst, const std::vector<Edge>& matching) {
    const int n = inst.n();
    std::vector<char> covered(n, 0);
    for (auto [u, v] : matching) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw Error("PreconditionFailed", "matching edge out of range");
        if (!inst.h_adj(u, v)) throw Error("PreconditionFailed", "matching edge not in H");
        if (covered[u] || covered[v]) throw Error("PreconditionFailed", "matching edges are not disjoint");
        covered[u] = covered[v] = 1;
    }
    long deficit = n - 2L * static_cast<long>(matching.size());
    long allowed = static_cast<long>(std::floor(inst.alpha * inst.alpha * n / 100.0));
    if (deficit > allowed)
        throw Error("PreconditionFailed", "matching leaves " + std::to_string(deficit) +
                                              " vertices uncovered, more than alpha^2 n/100 = " +
                                              std::to_string(allowed));
}

namespace {

template <class T>
const T& pick(const std::vector<T>& v, Rng* rng) {
    return v[pick_index(v.size(), rng)];
}

template <class T>
void maybe_shuffle(std::vector<T>& v, Rng* rng) {
    if (rng) shuffle(v, *rng);
}

double log2n(int n) {
    double l = std::log(static_cast<double>(n));
    return l * l;
}

}  // namespace

AbsorberState build_absorber(const Instance& inst, Rng* rng, const Absorb2Options& opt, MergeTrace* trace) {
    const int n = inst.n();
    const int m = absorber_count(n, inst.alpha);
    if (opt.matching) check_augmenting_matching(inst, *opt.matching);
    if (5 * m > n) throw AlgoFailure("absorber", "n too small for " + std::to_string(m) + " absorbers");

    AbsorberState st;
    AbsorbingPath& ap = st.path;
    VertexMask used(n, 0);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    maybe_shuffle(order, rng);
    ap.reserve.assign(order.begin(), order.begin() + m);
    for (Vertex u : ap.reserve) used[u] = 1;

    const EdgeKeySet none;
    for (int j = 0; j < m; ++j) {
        auto cand = available_edges(inst, ap.reserve[j], ap.reserve[j], used, nullptr, none);
        if (cand.empty()) throw AlgoFailure("absorber", "AbsorberExhausted(" + std::to_string(j + 1) + ")");
        Edge e = pick(cand, rng);
        used[e.first] = used[e.second] = 1;
        ap.absorb_edges.push_back(e);
    }
    for (int j = 0; j + 1 < m; ++j) {
        auto cand = available_edges(inst, ap.absorb_edges[j].second, ap.absorb_edges[j + 1].first, used,
                                    nullptr, none);
        if (cand.empty()) throw AlgoFailure("absorber", "ConnectorExhausted(" + std::to_string(j + 1) + ")");
        Edge f = pick(cand, rng);
        used[f.first] = used[f.second] = 1;
        ap.connectors.push_back(f);
    }
    for (int j = 0; j < m; ++j) {
        ap.vertices.push_back(ap.absorb_edges[j].first);
        ap.vertices.push_back(ap.absorb_edges[j].second);
        if (j + 1 < m) {
            ap.vertices.push_back(ap.connectors[j].first);
            ap.vertices.push_back(ap.connectors[j].second);
        }
    }

    // G0 := (base - (W' u U)) u P, with W' = V(P) minus its two ends.
    VertexMask skip(n, 0);
    for (Vertex u : ap.reserve) skip[u] = 1;
    for (std::size_t i = 1; i + 1 < ap.vertices.size(); ++i) skip[ap.vertices[i]] = 1;
    std::vector<Edge> base = inst.G.edges();
    if (opt.matching) {
        base.insert(base.end(), opt.matching->begin(), opt.matching->end());
        for (auto& e : base)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
    }
    st.sys = PathCycleSystem(n);
    for (Vertex u : ap.reserve) st.sys.deactivate(u);
    for (auto [u, v] : base) {
        if (skip[u] || skip[v]) continue;
        PcStatus s = st.sys.insert_edge(u, v);
        if (s != PcStatus::Ok)
            throw AlgoFailure("absorber", std::string("base graph insert failed: ") + to_string(s));
    }
    for (auto [u, v] : ap.edges()) {
        PcStatus s = st.sys.insert_edge(u, v);
        if (s != PcStatus::Ok)
            throw AlgoFailure("absorber", std::string("path insert failed: ") + to_string(s));
    }
    st.blocked.assign(n, 0);
    for (Vertex u : ap.reserve) st.blocked[u] = 1;
    for (Vertex v : ap.vertices) st.blocked[v] = 1;

    if (trace) {
        trace->initial_components = st.sys.component_count();
        trace->component_bound = static_cast<int>(std::floor(log2n(n))) +
                                 static_cast<int>(std::ceil(inst.alpha * inst.alpha * n / 200.0)) +
                                 opt.budget_slack;
        trace->component_bound_exceeded = trace->initial_components > trace->component_bound;
        if (opt.strict && trace->component_bound_exceeded)
            throw AlgoFailure("absorber", "initial component count exceeds bound");
    }
    return st;
}

namespace {

class Merger {
public:
    Merger(AbsorberState& st, const Instance& inst, Rng* rng, const Absorb2Options& opt)
        : st_(st), sys_(st.sys), inst_(inst), rng_(rng), opt_(opt), pos_(inst.n(), -1) {}

    // Returns the case tag and the number of G-edges removed.
    std::string step(int& g_removed) {
        g_removed_ = 0;
        std::string tag;
        if (sys_.path_count() >= 2)
            tag = case1();
        else if (sys_.path_count() == 1)
            tag = case2();
        else
            tag = case3();
        g_removed = g_removed_;
        return tag;
    }

private:
    std::vector<Edge> zset(Vertex x, Vertex y) const {
        return available_edges(inst_, x, y, st_.blocked, &sys_, st_.removed);
    }

    bool apply(std::vector<Edge> remove, std::vector<Edge> add) {
        SpliceResult r = sys_.splice(remove, add);
        if (!r.ok()) return false;
        for (auto [u, v] : remove) {
            st_.removed.insert(edge_key(u, v));
            if (inst_.G.has_edge(u, v)) ++g_removed_;
        }
        return true;
    }

    std::string case1() {
        std::vector<int> paths;
        for (int c : sys_.components())
            if (sys_.kind(c) != CompKind::Cycle) paths.push_back(c);
        maybe_shuffle(paths, rng_);
        for (int c : paths) {
            auto [x, y] = sys_.endpoints(c);
            std::vector<Edge> cand;
            for (auto e : zset(x, y)) {
                bool far = true;
                for (Vertex a : {e.first, e.second})
                    for (Vertex b : {x, y})
                        if (sys_.dist_along(a, b) <= 1) far = false;
                if (far) cand.push_back(e);
            }
            maybe_shuffle(cand, rng_);
            for (auto [z, zp] : cand)
                if (apply({{z, zp}}, {{x, z}, {y, zp}})) return "1";
        }
        throw AlgoFailure("merge", "AvailabilityExhausted(1)");
    }

    std::string case2() {
        int c = -1;
        for (int cc : sys_.components())
            if (sys_.kind(cc) != CompKind::Cycle) c = cc;
        auto [x, y] = sys_.endpoints(c);

        // 2.1: an H-neighbour of an end outside U, P and the path.
        std::vector<Edge> ends;
        for (Vertex e : {x, y}) {
            if (e == y && x == y && !ends.empty()) break;
            for (Vertex z : inst_.H.neighbors(e))
                if (sys_.active(z) && !st_.blocked[z] && sys_.component(z) != c) ends.emplace_back(e, z);
            if (x == y) break;
        }
        maybe_shuffle(ends, rng_);
        for (auto [e, z] : ends) {
            std::vector<Vertex> nb;
            for (Vertex w : sys_.neighbors(z))
                if (w >= 0) nb.push_back(w);
            maybe_shuffle(nb, rng_);
            for (Vertex zp : nb)
                if (apply({{z, zp}}, {{e, z}})) return "2.1";
        }

        std::vector<Vertex> walk = sys_.walk(c);
        if (walk.front() != x) std::reverse(walk.begin(), walk.end());
        for (int i = 0; i < static_cast<int>(walk.size()); ++i) pos_[walk[i]] = i;
        struct Clear {
            std::vector<int>& p;
            const std::vector<Vertex>& w;
            ~Clear() {
                for (Vertex v : w) p[v] = -1;
            }
        } clear{pos_, walk};

        auto Z = zset(x, y);
        // 2.2: an available edge oriented against the path.
        std::vector<Edge> back, fwd;
        for (auto e : Z) {
            int pz = pos_[e.first], pzp = pos_[e.second];
            if (pz < 0 || pzp < 0) continue;
            (pzp < pz ? back : fwd).push_back(e);
        }
        maybe_shuffle(back, rng_);
        for (auto [z, zp] : back)
            if (apply({{z, zp}}, {{x, z}, {y, zp}})) return "2.2";

        // 2.3: vertex-disjoint subset, closest consecutive pair.
        std::sort(fwd.begin(), fwd.end(), [&](const Edge& a, const Edge& b) {
            return std::make_pair(pos_[a.first], a.first) < std::make_pair(pos_[b.first], b.first);
        });
        std::vector<Edge> disjoint;
        std::vector<char> taken(inst_.n(), 0);
        for (auto e : fwd) {
            if (taken[e.first] || taken[e.second]) continue;
            taken[e.first] = taken[e.second] = 1;
            disjoint.push_back(e);
        }
        std::vector<std::tuple<int, int, Vertex, std::size_t>> pairs;
        for (std::size_t i = 0; i + 1 < disjoint.size(); ++i) {
            Vertex z = disjoint[i].first, w = disjoint[i + 1].first;
            pairs.emplace_back(pos_[w] - pos_[z], pos_[z], z, i);
        }
        std::sort(pairs.begin(), pairs.end());
        for (auto& pr : pairs) {
            std::size_t i = std::get<3>(pr);
            auto [z, zp] = disjoint[i];
            auto [w, wp] = disjoint[i + 1];
            (void)z;
            (void)wp;
            if (pos_[w] - pos_[zp] == 1) {
                if (apply({{zp, w}}, {{x, w}, {y, zp}})) return "2.3.1";
                continue;
            }
            Vertex zpp = walk[pos_[zp] + 1], wpp = walk[pos_[w] - 1];
            int lo = pos_[zpp], hi = pos_[wpp];
            auto inner = [&](Vertex v) { return pos_[v] >= lo && pos_[v] <= hi; };
            std::vector<Edge> cand;
            for (auto e : zset(zpp, wpp))
                if (!inner(e.first) && !inner(e.second)) cand.push_back(e);
            maybe_shuffle(cand, rng_);
            for (auto [z3, w3] : cand)
                if (apply({{zp, zpp}, {w, wpp}, {z3, w3}}, {{x, w}, {y, zp}, {zpp, z3}, {wpp, w3}}))
                    return "2.3.2";
        }
        throw AlgoFailure("merge", "AvailabilityExhausted(2)");
    }

    std::string case3() {
        std::vector<int> cycles = sys_.components();
        maybe_shuffle(cycles, rng_);
        std::stable_sort(cycles.begin(), cycles.end(),
                         [&](int a, int b) { return sys_.comp_size(a) < sys_.comp_size(b); });
        EdgeKeySet pkeys;
        for (auto [u, v] : st_.path.edges()) pkeys.insert(edge_key(u, v));

        // 3.1: an edge xy whose available set reaches another cycle.
        for (int c : cycles) {
            auto walk = sys_.walk(c);
            std::vector<Edge> es;
            for (std::size_t i = 0; i < walk.size(); ++i) {
                Vertex a = walk[i], b = walk[(i + 1) % walk.size()];
                if (!pkeys.count(edge_key(a, b))) {
                    es.emplace_back(a, b);
                    es.emplace_back(b, a);
                }
            }
            maybe_shuffle(es, rng_);
            for (auto [x, y] : es) {
                std::vector<Edge> cand;
                for (auto e : zset(x, y))
                    if (sys_.component(e.first) != c) cand.push_back(e);
                maybe_shuffle(cand, rng_);
                for (auto [z, zp] : cand)
                    if (apply({{x, y}, {z, zp}}, {{x, z}, {y, zp}})) return "3.1";
            }
        }

        // 3.2: two cycles into a path through one H-edge.
        for (std::size_t a = 0; a < cycles.size(); ++a) {
            std::vector<Vertex> xs;
            for (Vertex v : sys_.walk(cycles[a]))
                if (!st_.blocked[v]) xs.push_back(v);
            if (xs.empty()) continue;
            Vertex x = pick(xs, rng_);
            for (std::size_t b = 0; b < cycles.size(); ++b) {
                if (b == a) continue;
                std::vector<Vertex> ys;
                for (Vertex v : sys_.walk(cycles[b]))
                    if (!st_.blocked[v]) ys.push_back(v);
                if (ys.empty()) continue;
                Vertex y = pick(ys, rng_);
                auto Z = zset(x, y);
                maybe_shuffle(Z, rng_);
                for (auto [z, zp] : Z) {
                    bool use_x = sys_.component(z) != sys_.component(x);
                    Vertex end = use_x ? x : y;
                    Vertex join = use_x ? z : zp;
                    std::vector<Vertex> nb;
                    for (Vertex w : sys_.neighbors(end))
                        if (w >= 0) nb.push_back(w);
                    maybe_shuffle(nb, rng_);
                    for (Vertex w : nb)
                        if (apply({{w, end}, {z, zp}}, {{end, join}})) return "3.2";
                }
            }
        }
        throw AlgoFailure("merge", "AvailabilityExhausted(3)");
    }

    AbsorberState& st_;
    PathCycleSystem& sys_;
    const Instance& inst_;
    Rng* rng_;
    const Absorb2Options& opt_;
    std::vector<int> pos_;
    int g_removed_ = 0;
};

bool reduces(const MergeStep& s) { return s.components_after < s.components_before; }

}  // namespace

void merge_to_cycle(AbsorberState& st, const Instance& inst, Rng* rng, MergeTrace& trace,
                    const Absorb2Options& opt) {
    const int n = inst.n();
    PathCycleSystem& sys = st.sys;
    trace.budget = static_cast<int>(std::ceil(inst.alpha * inst.alpha * n / 40.0)) + opt.budget_slack;
    const std::size_t hard_cap = 10 * static_cast<std::size_t>(n) + 1000;
    const auto pedges = st.path.edges();
    Merger merger(st, inst, rng, opt);
    while (!(sys.component_count() == 1 && sys.cycle_count() == 1)) {
        if (sys.component_count() == 0) throw AlgoFailure("merge", "empty system");
        if (trace.steps.size() >= hard_cap) throw AlgoFailure("merge", "BudgetExceeded(hard cap)");
        MergeStep s;
        s.components_before = sys.component_count();
        s.paths_before = sys.path_count();
        s.tag = merger.step(s.edges_removed);
        s.components_after = sys.component_count();
        s.paths_after = sys.path_count();

        for (auto [u, v] : pedges)
            if (!sys.has_edge(u, v)) throw AlgoFailure("merge", "absorbing path edge lost in case " + s.tag);
        if (s.tag == "1" && (s.paths_after != s.paths_before - 1 || s.components_after > s.components_before + 1))
            ++trace.case1_violations;
        if (s.edges_removed > 3) ++trace.removal_violations;
        if (s.tag != "1" && !trace.steps.empty()) {
            const MergeStep& prev = trace.steps.back();
            if (prev.tag != "1" && !reduces(prev) && !reduces(s)) ++trace.two_step_violations;
        }
        trace.steps.push_back(std::move(s));
        if (static_cast<int>(trace.steps.size()) > trace.budget && !trace.budget_exceeded) {
            trace.budget_exceeded = true;
            if (opt.strict) throw AlgoFailure("merge", "BudgetExceeded");
        }
    }
}

CycleExtractor::CycleExtractor(const Instance& inst, const AbsorberState& st, Rng* rng, const Absorb2Options& opt)
    : inst_(inst), st_(st), rng_(rng), opt_(opt), idx_(inst.n(), -1) {
    const auto& pv = st.path.vertices;
    plen_ = static_cast<int>(pv.size());
    if (st.sys.component_count() != 1 || st.sys.cycle_count() != 1)
        throw AlgoFailure("extract", "system is not a single cycle");
    cyc_ = st.sys.walk(st.sys.component(pv.front()));
    const int N = static_cast<int>(cyc_.size());
    auto it = std::find(cyc_.begin(), cyc_.end(), pv.front());
    std::rotate(cyc_.begin(), it, cyc_.end());
    if (N > 1 && cyc_[1] != pv[1]) std::reverse(cyc_.begin() + 1, cyc_.end());
    for (int i = 0; i < plen_; ++i)
        if (cyc_[i] != pv[i]) throw AlgoFailure("extract", "absorbing path not contiguous on cycle");
    for (int i = 0; i < N; ++i) idx_[cyc_[i]] = i;
}

std::vector<Vertex> CycleExtractor::window(int start, int len) const {
    const int N = static_cast<int>(cyc_.size());
    std::vector<Vertex> w(len);
    for (int i = 0; i < len; ++i) w[i] = cyc_[(start + i) % N];
    return w;
}

// Replaces e_1..e_count by z_j u_j z_j'.
std::vector<Vertex> CycleExtractor::absorb(std::vector<Vertex> cycle, int count) const {
    if (count == 0) return cycle;
    if (count > static_cast<int>(st_.path.reserve.size()))
        throw AlgoFailure("extract", "need " + std::to_string(count) + " absorbers");
    std::unordered_map<std::uint64_t, int> want;
    for (int j = 0; j < count; ++j)
        want[edge_key(st_.path.absorb_edges[j].first, st_.path.absorb_edges[j].second)] = j;
    std::vector<Vertex> out;
    out.reserve(cycle.size() + count);
    const std::size_t L = cycle.size();
    int done = 0;
    for (std::size_t i = 0; i < L; ++i) {
        out.push_back(cycle[i]);
        auto f = want.find(edge_key(cycle[i], cycle[(i + 1) % L]));
        if (f != want.end()) {
            out.push_back(st_.path.reserve[f->second]);
            want.erase(f);
            ++done;
        }
    }
    if (done != count) throw AlgoFailure("extract", "absorbing edge missing from cycle");
    return out;
}

bool CycleExtractor::short_construction(int k, std::vector<Vertex>& out) {
    const int N = static_cast<int>(cyc_.size());
    const int L = k - 2;
    if (L < 1 || L > N - 2) return false;
    int offset = rng_ ? static_cast<int>(uniform_below(*rng_, N)) : 0;
    for (int t = 0; t < N; ++t) {
        int s = (offset + t) % N;
        Vertex x = cyc_[s], y = cyc_[(s + L - 1) % N];
        auto rel = [&](Vertex v) { return (idx_[v] - s + N) % N; };
        std::vector<Edge> cand;
        for (auto e : available_edges(inst_, x, y, st_.blocked, &st_.sys, st_.removed))
            if (rel(e.first) >= L && rel(e.second) >= L) cand.push_back(e);
        if (cand.empty()) continue;
        auto [z, zp] = pick(cand, rng_);
        out = window(s, L);
        out.push_back(zp);
        out.push_back(z);
        return true;
    }
    return false;
}

bool CycleExtractor::middle_construction(int k, std::vector<Vertex>& out) {
    const int N = static_cast<int>(cyc_.size());
    const int L = k - 2;
    const int m = static_cast<int>(st_.path.reserve.size());
    if (L < plen_) return false;
    std::vector<int> offsets(L - plen_ + 1);
    std::iota(offsets.begin(), offsets.end(), 0);
    maybe_shuffle(offsets, rng_);
    if (static_cast<int>(offsets.size()) > opt_.max_placements) offsets.resize(opt_.max_placements);
    for (int o : offsets) {
        int s = (N - o) % N;
        Vertex x = cyc_[s], y = cyc_[(s + L - 1) % N];
        auto rel = [&](Vertex v) { return (idx_[v] - s + N) % N; };
        auto Z = available_edges(inst_, x, y, st_.blocked, &st_.sys, st_.removed);
        std::vector<Edge> outside, back, fwd;
        for (auto e : Z) {
            int a = rel(e.first), b = rel(e.second);
            if (a >= L && b >= L)
                outside.push_back(e);
            else if (a < L && b < L)
                (b < a ? back : fwd).push_back(e);
        }
        std::vector<Vertex> win = window(s, L);
        if (!outside.empty()) {
            auto [z, zp] = pick(outside, rng_);
            out = std::move(win);
            out.push_back(zp);
            out.push_back(z);
            return true;
        }
        if (!back.empty() && m >= 2) {
            auto [z, zp] = pick(back, rng_);
            std::vector<Vertex> c(win.begin(), win.begin() + rel(zp) + 1);
            for (int i = L - 1; i >= rel(z); --i) c.push_back(win[i]);
            out = absorb(std::move(c), 2);
            return true;
        }
        std::sort(fwd.begin(), fwd.end(), [&](const Edge& a, const Edge& b) {
            return std::make_pair(rel(a.first), a.first) < std::make_pair(rel(b.first), b.first);
        });
        std::vector<Edge> disjoint;
        std::vector<char> taken(inst_.n(), 0);
        for (auto e : fwd) {
            if (taken[e.first] || taken[e.second]) continue;
            taken[e.first] = taken[e.second] = 1;
            disjoint.push_back(e);
        }
        std::vector<std::tuple<int, int, std::size_t>> pairs;
        for (std::size_t i = 0; i + 1 < disjoint.size(); ++i)
            pairs.emplace_back(rel(disjoint[i + 1].first) - rel(disjoint[i].first), rel(disjoint[i].first), i);
        std::sort(pairs.begin(), pairs.end());
        for (auto [ell, pz, i] : pairs) {
            (void)pz;
            if (ell > m) break;
            Vertex zp = disjoint[i].second, w = disjoint[i + 1].first;
            int pstart = o, pend = o + plen_ - 1;
            if (!(pend < rel(disjoint[i].first) || pstart > rel(w))) continue;
            std::vector<Vertex> c(win.begin(), win.begin() + rel(zp) + 1);
            for (int j = L - 1; j >= rel(w); --j) c.push_back(win[j]);
            out = absorb(std::move(c), ell);
            return true;
        }
    }
    return false;
}

std::vector<Vertex> CycleExtractor::extract(int k) {
    const int n = inst_.n();
    if (k < 3 || k > n) throw Error("BadParams", "cycle length out of range");
    const int N = static_cast<int>(cyc_.size());
    if (k >= N) return absorb(cyc_, k - N);
    std::vector<Vertex> out;
    const double short_limit = inst_.alpha * inst_.alpha * n / 20.0;
    if (k <= short_limit) {
        if (short_construction(k, out)) return out;
        throw AlgoFailure("extract", "short regime: no available edge off any window");
    }
    if (middle_construction(k, out)) return out;
    ++fallbacks_;
    if (short_construction(k, out)) return out;
    throw AlgoFailure("extract", "middle regime: no placement closes and short construction failed");
}

WitnessResult pancyclic_witness(const Instance& inst, Rng* rng, const Absorb2Options& opt) {
    WitnessResult r;
    std::optional<AbsorberState> st;
    std::optional<CycleExtractor> ex;
    try {
        st.emplace(build_absorber(inst, rng, opt, &r.trace));
        r.path = st->path;
        merge_to_cycle(*st, inst, rng, r.trace, opt);
        ex.emplace(inst, *st, rng, opt);
    } catch (const AlgoFailure& f) {
        r.failures.push_back({std::nullopt, f.stage(), f.reason()});
        return r;
    }
    r.base_length = ex->base_length();
    for (int k = 3; k <= inst.n(); ++k) {
        try {
            auto c = ex->extract(k);
            CycleCheck chk = validate_cycle(inst.host, c, k);
            if (!chk.ok)
                r.failures.push_back({k, "validate", chk.violation});
            else
                r.cycles.emplace(k, std::move(c));
        } catch (const AlgoFailure& f) {
            r.failures.push_back({k, f.stage(), f.reason()});
        }
    }
    r.fallbacks = ex->fallback_count();
    return r;
}

}  // namespace rpg
