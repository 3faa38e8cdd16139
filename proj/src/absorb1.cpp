#include "rpg/absorb1.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "rpg/absorb2.hpp"
#include "rpg/matching.hpp"
#include "rpg/verify.hpp"

namespace rpg {

int SixStepTrace::soft_failures() const {
    int c = 0;
    for (const auto& k : checks) c += !k.ok;
    return c;
}

const char* to_string(Verdict v) {
    return v == Verdict::NonHamiltonianCertified ? "NON_HAMILTONIAN_CERTIFIED" : "INCONCLUSIVE";
}

Verdict bipartite_obstruction(const StaticGraph& G, const std::vector<char>& in_b, double alpha) {
    const int n = G.n();
    long inside = 0;
    for (auto [u, v] : G.edges()) inside += in_b[u] && in_b[v];
    long need = static_cast<long>(std::ceil((1.0 - 2.0 * alpha) * n - 1e-7));
    return inside < need ? Verdict::NonHamiltonianCertified : Verdict::Inconclusive;
}

namespace {

double log_sq(int n) {
    double l = std::log(static_cast<double>(n));
    return l * l;
}

template <class T>
void maybe_shuffle(std::vector<T>& v, Rng* rng) {
    if (rng) shuffle(v, *rng);
}

std::string edge_str(Vertex u, Vertex v) { return std::to_string(u) + "-" + std::to_string(v); }

class SixStep {
public:
    SixStep(const Instance& inst, const Partition& part, Rng* rng, const SixStepOptions& opt)
        : inst_(inst), part_(part), rng_(rng), opt_(opt), n_(inst.n()), sys_(n_), in_s_(n_, 0),
          in_k_(n_, 0), in_u_(n_, 0), in_b1_(n_, 0) {
        for (Vertex v = 0; v < n_; ++v) in_b1_[v] = part_.part[v] == Part::B1;
    }

    SixStepResult run() {
        for (Vertex v = 0; v < n_; ++v) {
            Vertex u = m(v);
            if (u > v) add(v, u, 0);
        }
        for (auto [u, v] : inst_.G.edges())
            if (m(u) != v) add(u, v, 0);
        step1();
        step2();
        step3();
        step4();
        step5();
        step6();
        close();
        return std::move(res_);
    }

private:
    Part pt(Vertex v) const { return part_.part[v]; }
    Vertex m(Vertex v) const { return part_.partner(v); }
    bool is_a(Vertex v) const { return pt(v) == Part::A; }
    bool b2_or_r(Vertex v) const { return pt(v) == Part::B2 || pt(v) == Part::R; }

    [[noreturn]] void fail(int step, const std::string& why) const {
        throw AlgoFailure("step " + std::to_string(step), why);
    }

    void unavailable(Vertex u, Vertex v) {
        res_.D.insert(edge_key(u, v));
        if (m(u) == v) {
            if (pt(u) == Part::B1) in_k_[u] = 1;
            if (pt(v) == Part::B1) in_k_[v] = 1;
        }
    }
    void remove(Vertex u, Vertex v, int step) {
        PcStatus s = sys_.delete_edge(u, v);
        if (s != PcStatus::Ok) fail(step, "remove " + edge_str(u, v) + ": " + to_string(s));
        unavailable(u, v);
    }
    void add(Vertex u, Vertex v, int step) {
        PcStatus s = sys_.insert_edge(u, v);
        if (s != PcStatus::Ok) fail(step, "add " + edge_str(u, v) + ": " + to_string(s));
    }
    void to_s(Vertex v, int step) {
        PcStatus s = sys_.deactivate(v);
        if (s != PcStatus::Ok) fail(step, "delete vertex " + std::to_string(v) + ": " + to_string(s));
        in_s_[v] = 1;
        res_.S.push_back(v);
    }
    void remove_matching_edge(Vertex z, int step) {
        Vertex mz = m(z);
        if (mz < 0 || !sys_.has_edge(z, mz)) fail(step, "matching edge at " + std::to_string(z) + " missing");
        remove(z, mz, step);
    }

    void tally(int step, const std::string& c) { ++res_.trace.cases[std::to_string(step) + ":" + c]; }

    void check(int step, const std::string& name, bool ok, const std::string& detail = {}) {
        res_.trace.checks.push_back({step, name, ok, detail});
        if (!ok && opt_.strict) fail(step, "invariant " + name + " " + detail);
    }
    void check_sizes(int step, const std::string& name, double factor) {
        double bound = factor * log_sq(n_);
        int k = static_cast<int>(std::count(in_k_.begin(), in_k_.end(), 1));
        bool ok = res_.S.size() <= bound && res_.D.size() <= bound && k <= bound;
        check(step, name, ok,
              "S=" + std::to_string(res_.S.size()) + " D=" + std::to_string(res_.D.size()) +
                  " K=" + std::to_string(k) + " bound=" + std::to_string(bound));
        res_.trace.s_after.push_back(static_cast<int>(res_.S.size()));
        res_.trace.d_after.push_back(static_cast<int>(res_.D.size()));
        res_.trace.k_after.push_back(k);
    }
    bool path_ends_in(bool (SixStep::*pred)(Vertex) const) const {
        for (int c : sys_.components()) {
            if (sys_.kind(c) == CompKind::Cycle) continue;
            auto e = sys_.endpoints(c);
            if (!(this->*pred)(e[0]) || !(this->*pred)(e[1])) return false;
        }
        return true;
    }
    bool a_or_r(Vertex v) const { return is_a(v) || pt(v) == Part::R; }
    bool b2r_or_path(Vertex v) const { return b2_or_r(v); }
    bool path_intact() const {
        const auto& P = res_.path;
        for (std::size_t i = 0; i + 1 < P.size(); ++i)
            if (!sys_.has_edge(P[i], P[i + 1])) return false;
        return true;
    }

    std::vector<char> ball(const std::vector<Vertex>& src, int radius, bool prime) const {
        std::vector<char> seen(n_, 0);
        std::vector<Vertex> frontier;
        for (Vertex v : src)
            if (!seen[v]) {
                seen[v] = 1;
                frontier.push_back(v);
            }
        for (int r = 0; r < radius; ++r) {
            std::vector<Vertex> next;
            for (Vertex v : frontier) {
                const auto& nb = prime ? g1_prime_[v] : sys_.neighbors(v);
                for (Vertex u : nb)
                    if (u >= 0 && !seen[u]) {
                        seen[u] = 1;
                        next.push_back(u);
                    }
            }
            frontier.swap(next);
        }
        return seen;
    }

    bool touches_a_or_u(Vertex z) const {
        for (Vertex u : sys_.neighbors(z))
            if (u >= 0 && (is_a(u) || in_u_[u])) return true;
        return false;
    }

    // A B1 neighbour of v outside K whose matching edge is still present.
    Vertex pick_b1(Vertex v, std::initializer_list<Vertex> avoid, bool avoid_au, int step) {
        std::vector<Vertex> cand;
        for (Vertex z : inst_.H.neighbors(v)) {
            if (!in_b1_[z] || in_k_[z] || in_s_[z] || !sys_.active(z)) continue;
            if (std::find(avoid.begin(), avoid.end(), z) != avoid.end()) continue;
            if (!sys_.has_edge(z, m(z))) continue;
            if (avoid_au && touches_a_or_u(z)) continue;
            cand.push_back(z);
        }
        if (cand.empty()) fail(step, "no free B1 neighbour of " + std::to_string(v));
        return cand[pick_index(cand.size(), rng_)];
    }

    void step1() {
        for (auto [u, v] : inst_.G.edges())
            if (m(u) == v) {
                remove(u, v, 1);
                to_s(u, 1);
                to_s(v, 1);
                tally(1, "matching-edge-in-G");
            }
        check_sizes(1, "A1", 2.0);
        check(1, "A2", path_ends_in(&SixStep::a_or_r));
        bool alt = true;
        for (Vertex v = 0; v < n_; ++v) {
            if (sys_.degree(v) != 2) continue;
            auto nb = sys_.neighbors(v);
            alt = alt && ((m(v) == nb[0]) != (m(v) == nb[1]));
        }
        check(1, "A3", alt);
    }

    void step2() {
        const double a2 = inst_.alpha * inst_.alpha;
        auto& tr = res_.trace;
        tr.t_formula = static_cast<int>(std::ceil(3.0 / (opt_.eta * a2)));
        int t = std::min(tr.t_formula, std::max(2, static_cast<int>(part_.R.size()) / 8));
        if (opt_.t_override > 0) t = opt_.t_override;
        tr.t = t;
        if (static_cast<int>(part_.R.size()) < t) fail(2, "|R| smaller than t");

        std::vector<Vertex> R = part_.R;
        maybe_shuffle(R, rng_);
        res_.reserve.assign(R.begin(), R.begin() + t);
        for (Vertex u : res_.reserve) in_u_[u] = 1;

        g1_prime_.resize(n_);
        for (Vertex v = 0; v < n_; ++v) g1_prime_[v] = sys_.neighbors(v);

        std::vector<Vertex> xs(t), ys(t);
        for (int i = 0; i < t; ++i) {
            Vertex u = res_.reserve[i];
            std::vector<Edge> cand;
            for (Vertex z : inst_.H.neighbors(u)) {
                if (!in_b1_[z] || !sys_.active(z)) continue;
                for (Vertex zp : inst_.G.neighbors(z)) {
                    if (zp <= z || !in_b1_[zp] || !sys_.active(zp) || !inst_.h_adj(u, zp)) continue;
                    if (res_.D.count(edge_key(z, zp))) continue;
                    cand.emplace_back(z, zp);
                }
            }
            if (cand.empty()) fail(2, "no absorbing edge for reserve vertex " + std::to_string(i + 1));
            Edge e = cand[pick_index(cand.size(), rng_)];
            if (rng_ && uniform_below(*rng_, 2)) std::swap(e.first, e.second);
            xs[i] = e.first;
            ys[i] = e.second;
            unavailable(e.first, e.second);
            res_.absorb_edges.push_back(e);
        }
        for (int i = 0; i < t; ++i) {
            if (i > 0) remove_matching_edge(xs[i], 2);
            if (i + 1 < t) remove_matching_edge(ys[i], 2);
        }
        in_k_[xs[0]] = in_k_[ys[t - 1]] = 1;
        std::vector<Vertex> W(xs.begin(), xs.end());
        W.insert(W.end(), ys.begin(), ys.end());
        W.push_back(m(xs[0]));
        W.push_back(m(ys[t - 1]));
        if (m(xs[0]) < 0 || m(ys[t - 1]) < 0) fail(2, "path end has no matching partner");

        std::vector<Vertex> ws(t > 0 ? t - 1 : 0), zs(t > 0 ? t - 1 : 0);
        for (int i = 0; i + 1 < t; ++i) {
            auto near_now = ball(W, 4, false);
            auto near_orig = ball(W, 1, true);
            std::vector<Vertex> kset;
            for (Vertex v = 0; v < n_; ++v)
                if (in_k_[v]) kset.push_back(v);
            auto near_k = ball(kset, 4, true);
            auto bad = [&](Vertex v) {
                return in_u_[v] || !sys_.active(v) || near_now[v] || near_orig[v] || near_k[v];
            };
            std::vector<Edge> cand;
            for (Vertex w : inst_.H.neighbors(ys[i])) {
                if (bad(w)) continue;
                for (Vertex z : inst_.G.neighbors(w)) {
                    if (bad(z) || !inst_.h_adj(xs[i + 1], z)) continue;
                    if (res_.D.count(edge_key(w, z)) || !sys_.has_edge(w, z)) continue;
                    cand.emplace_back(w, z);
                }
            }
            if (cand.empty()) fail(2, "no connector edge for i=" + std::to_string(i + 1));
            auto [w, z] = cand[pick_index(cand.size(), rng_)];
            unavailable(w, z);

            int c = sys_.component(w);
            if (sys_.kind(c) == CompKind::Cycle && sys_.comp_size(c) <= 8) {
                auto walk = sys_.walk(c);
                const std::size_t L = walk.size();
                for (std::size_t j = 0; j < L; ++j) {
                    Vertex a = walk[j], b = walk[(j + 1) % L];
                    if (edge_key(a, b) != edge_key(w, z)) remove(a, b, 2);
                }
                for (Vertex v : walk)
                    if (v != w && v != z) to_s(v, 2);
                ++res_.trace.short_cycles_removed_step2;
                tally(2, "short-cycle");
            } else {
                endpoint_case(w, w, z);
                endpoint_case(z, w, z);
            }
            add(ys[i], w, 2);
            add(z, xs[i + 1], 2);
            W.push_back(w);
            W.push_back(z);
            ws[i] = w;
            zs[i] = z;
        }

        auto& P = res_.path;
        P.push_back(m(xs[0]));
        for (int i = 0; i < t; ++i) {
            P.push_back(xs[i]);
            P.push_back(ys[i]);
            if (i + 1 < t) {
                P.push_back(ws[i]);
                P.push_back(zs[i]);
            }
        }
        P.push_back(m(ys[t - 1]));
        std::vector<Vertex> sorted = P;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(2, "absorbing path repeats a vertex");
        check(2, "B4", path_intact());
        check(2, "B2", pt(P.front()) == Part::B2 && pt(P.back()) == Part::B2);
        check_sizes(2, "B9", 3.0);
    }

    // Frees x so that one more edge can be attached to it.
    void endpoint_case(Vertex x, Vertex wi, Vertex zi) {
        const int s = 2;
        switch (pt(x)) {
            case Part::A:
            case Part::R: tally(s, "3.1"); return;
            case Part::B1:
                remove_matching_edge(x, s);
                tally(s, "3.2");
                return;
            case Part::C1: {
                Vertex y = m(x);
                if (!sys_.has_edge(x, y)) fail(s, "case 3.3: matching edge missing");
                Vertex zstar = sys_.other_neighbor(y, x);
                Vertex z = pick_b1(y, {wi, zi, zstar}, true, s);
                remove(x, y, s);
                remove_matching_edge(z, s);
                add(y, z, s);
                tally(s, "3.3");
                return;
            }
            case Part::B2:
            case Part::C2: break;
        }
        Vertex y = m(x);
        if (!sys_.has_edge(x, y)) fail(s, "case 3.4: matching edge missing");
        Vertex z = sys_.other_neighbor(y, x);
        if (z < 0) fail(s, "case 3.4: matched vertex is a path end");
        switch (pt(z)) {
            case Part::A:
            case Part::R:
                remove(x, y, s);
                remove(y, z, s);
                to_s(y, s);
                tally(s, "3.4.1");
                break;
            case Part::B2: {
                Vertex zp = sys_.other_neighbor(z, y);
                if (zp < 0) fail(s, "case 3.4.2: B2 vertex is a path end");
                remove(x, y, s);
                remove(y, z, s);
                to_s(y, s);
                in_k_[zp] = 1;
                tally(s, "3.4.2");
                break;
            }
            case Part::B1: {
                Vertex zp = m(z);
                if (!sys_.has_edge(z, zp)) fail(s, "case 3.4.3: matching edge missing");
                remove(x, y, s);
                remove(y, z, s);
                remove(z, zp, s);
                to_s(y, s);
                to_s(z, s);
                tally(s, "3.4.3");
                break;
            }
            case Part::C2: {
                Vertex zstar = sys_.other_neighbor(z, y);
                Vertex zp = pick_b1(z, {wi, zi, zstar}, true, s);
                remove(x, y, s);
                remove(y, z, s);
                remove_matching_edge(zp, s);
                add(z, zp, s);
                to_s(y, s);
                tally(s, "3.4.4");
                break;
            }
            case Part::C1: {
                Vertex zp = m(z);
                if (!sys_.has_edge(z, zp)) fail(s, "case 3.4.5: matching edge missing");
                Vertex zstar = sys_.other_neighbor(zp, z);
                Vertex zpp = pick_b1(zp, {wi, zi, zstar}, true, s);
                remove(x, y, s);
                remove(y, z, s);
                remove(z, zp, s);
                remove_matching_edge(zpp, s);
                add(zp, zpp, s);
                to_s(y, s);
                to_s(z, s);
                tally(s, "3.4.5");
                break;
            }
        }
    }

    void step3() {
        const int s = 3;
        std::vector<char> in_p(n_, 0);
        for (Vertex v : res_.path) in_p[v] = 1;
        std::vector<Vertex> targets;
        for (Vertex v = 0; v < n_; ++v)
            if ((is_a(v) || in_u_[v]) && !in_p[v] && sys_.active(v)) targets.push_back(v);
        for (Vertex x : targets) {
            while (sys_.degree(x) > 0) {
                auto nb = sys_.neighbors(x);
                Vertex y = nb[0] >= 0 ? nb[0] : nb[1];
                if (is_a(y) || in_u_[y] || pt(y) == Part::B2) {
                    remove(x, y, s);
                    tally(s, "1");
                } else if (pt(y) == Part::R) {
                    remove(x, y, s);
                    if (sys_.degree(y) > 0) fail(s, "case 2: R vertex not isolated");
                    to_s(y, s);
                    tally(s, "2");
                } else if (pt(y) == Part::B1 && !sys_.has_edge(y, m(y))) {
                    // matching edge already spent on an earlier repair: y stays as a path end
                    remove(x, y, s);
                    tally(s, "3-spent");
                } else if (pt(y) == Part::B1) {
                    remove(x, y, s);
                    remove_matching_edge(y, s);
                    if (sys_.degree(y) > 0) fail(s, "case 3: B1 vertex keeps an edge");
                    to_s(y, s);
                    tally(s, "3");
                } else if (pt(y) == Part::C2) {
                    Vertex zstar = sys_.other_neighbor(y, x);
                    Vertex z = pick_b1(y, {zstar}, false, s);
                    remove(x, y, s);
                    remove_matching_edge(z, s);
                    add(y, z, s);
                    tally(s, "4");
                } else {
                    Vertex z = sys_.other_neighbor(y, x);
                    if (z < 0 || z != m(y)) fail(s, "case 5: C1 vertex without its matching edge");
                    Vertex zstar = sys_.other_neighbor(z, y);
                    Vertex zp = pick_b1(z, {zstar}, false, s);
                    remove(x, y, s);
                    remove(y, z, s);
                    remove_matching_edge(zp, s);
                    add(z, zp, s);
                    to_s(y, s);
                    tally(s, "5");
                }
            }
        }
        for (Vertex x : targets)
            if (sys_.active(x)) to_s(x, s);
        bool u_gone = true;
        for (Vertex u : res_.reserve) u_gone = u_gone && !sys_.active(u);
        check(3, "C1", path_intact());
        check(3, "C3", path_ends_in(&SixStep::b2r_or_path));
        check(3, "C5", u_gone);
        check_sizes(3, "C6", 4.0);
    }

    void step4() {
        const int s = 4;
        const auto& P = res_.path;
        int c = sys_.component(P.front());
        if (sys_.kind(c) == CompKind::Cycle) {
            EdgeKeySet pkeys;
            std::vector<char> in_p(n_, 0);
            for (std::size_t i = 0; i + 1 < P.size(); ++i) pkeys.insert(edge_key(P[i], P[i + 1]));
            for (Vertex v : P) in_p[v] = 1;
            auto walk = sys_.walk(c);
            const std::size_t L = walk.size();
            if (L <= P.size() - 1 + 14) {
                for (std::size_t j = 0; j < L; ++j) {
                    Vertex a = walk[j], b = walk[(j + 1) % L];
                    if (!pkeys.count(edge_key(a, b))) remove(a, b, s);
                }
                for (Vertex v : walk)
                    if (!in_p[v]) to_s(v, s);
                tally(s, "short");
            } else {
                cut_from(P.front(), P[1], s);
                cut_from(P.back(), P[P.size() - 2], s);
                tally(s, "cut");
            }
        }
        check_sizes(4, "D1", 5.0);
        c = sys_.component(P.front());
        check(4, "D2", path_intact() && sys_.kind(c) != CompKind::Cycle);
        const double tol = 5.0 * log_sq(n_);
        bool balanced = true;
        for (int cc : sys_.components()) {
            if (sys_.kind(cc) != CompKind::Cycle) continue;
            int b1 = 0, b2 = 0;
            for (Vertex v : sys_.walk(cc)) {
                b1 += pt(v) == Part::B1;
                b2 += pt(v) == Part::B2;
            }
            balanced = balanced && std::abs(b1 - b2) <= tol;
        }
        check(4, "D4", balanced);
        check(4, "D3", path_ends_in(&SixStep::b2r_or_path));
    }

    void cut_from(Vertex x, Vertex inward, int s) {
        std::vector<Vertex> seg{x};
        Vertex prev = inward, cur = x;
        for (;;) {
            Vertex nxt = sys_.other_neighbor(cur, prev);
            if (nxt < 0 || nxt == x) fail(s, "no B2/C2 vertex after the path end");
            seg.push_back(nxt);
            if (pt(nxt) == Part::B2 || pt(nxt) == Part::C2) break;
            prev = cur;
            cur = nxt;
        }
        check(4, "cut-length<=3", seg.size() <= 4, std::to_string(seg.size() - 1));
        for (std::size_t j = 0; j + 1 < seg.size(); ++j) remove(seg[j], seg[j + 1], s);
        for (std::size_t j = 1; j + 1 < seg.size(); ++j) to_s(seg[j], s);
        Vertex y = seg.back();
        if (pt(y) == Part::C2) {
            std::vector<Vertex> cand;
            for (Vertex z : inst_.H.neighbors(y)) {
                if (!in_b1_[z] || in_k_[z] || !sys_.active(z) || !sys_.has_edge(z, m(z))) continue;
                auto nb = sys_.neighbors(y);
                if (nb[0] == z || nb[1] == z) continue;
                cand.push_back(z);
            }
            if (cand.empty()) fail(s, "no free B1 neighbour of " + std::to_string(y));
            Vertex z = cand[pick_index(cand.size(), rng_)];
            remove_matching_edge(z, s);
            add(y, z, s);
        }
    }

    // Identifies the component of v in the current system with the matching
    // edges e1, e2 also cut, without mutating.
    std::int64_t piece(Vertex v, Edge e1, Edge e2) const {
        int c = sys_.component(v);
        int pos = sys_.position(v);
        int L = sys_.comp_size(c);
        bool cyc = sys_.kind(c) == CompKind::Cycle;
        std::vector<int> cuts;
        for (Edge e : {e1, e2}) {
            if (sys_.component(e.first) != c) continue;
            int a = sys_.position(e.first), b = sys_.position(e.second);
            if (cyc && std::abs(a - b) != 1)
                cuts.push_back(L - 1);
            else
                cuts.push_back(std::min(a, b));
        }
        int id = 0;
        if (!cyc) {
            for (int x : cuts) id += x < pos;
        } else if (cuts.size() == 2) {
            int lo = std::min(cuts[0], cuts[1]), hi = std::max(cuts[0], cuts[1]);
            id = (lo < pos && pos <= hi) ? 1 : 0;
        }
        return static_cast<std::int64_t>(c) * 4 + id;
    }

    bool claim_search(const std::vector<Vertex>& walk) {
        const int L = static_cast<int>(walk.size());
        std::vector<int> c2;
        for (int i = 0; i < L; ++i)
            if (pt(walk[i]) == Part::C2) c2.push_back(i);
        const int r = static_cast<int>(c2.size());
        if (r < 3) return false;
        auto gap = [&](int a, int b) { return ((b - a) % L + L) % L; };
        for (int j = 0; j < r; ++j) {
            int a = c2[j], b = c2[(j + 1) % r], c = c2[(j + 2) % r];
            if (gap(a, b) > 3 || gap(b, c) > 3) continue;
            int idx[3] = {a, b, c};
            for (int p1 = 0; p1 < 3; ++p1)
                for (int p2 = 0; p2 < 3; ++p2) {
                    if (p1 == p2) continue;
                    if (try_claim(walk, idx[p1], idx[p2])) return true;
                }
        }
        return false;
    }

    bool try_claim(const std::vector<Vertex>& walk, int i1, int i2) {
        const int L = static_cast<int>(walk.size());
        Vertex v1 = walk[i1], v2 = walk[i2];
        int fwd = ((i2 - i1) % L + L) % L;
        std::vector<Vertex> Q;
        if (fwd <= L - fwd)
            for (int k = 0; k <= fwd; ++k) Q.push_back(walk[(i1 + k) % L]);
        else
            for (int k = 0; k <= L - fwd; ++k) Q.push_back(walk[((i1 - k) % L + L) % L]);
        std::vector<char> in_q(n_, 0);
        for (Vertex v : Q) in_q[v] = 1;
        auto cand = [&](Vertex v, int i) {
            Vertex l = walk[(i + L - 1) % L], rr = walk[(i + 1) % L];
            std::vector<Vertex> out;
            for (Vertex w : inst_.H.neighbors(v)) {
                if (!in_b1_[w] || in_k_[w] || !sys_.active(w) || in_q[w] || w == l || w == rr) continue;
                if (!sys_.has_edge(w, m(w))) continue;
                out.push_back(w);
            }
            return out;
        };
        auto W1 = cand(v1, i1), W2 = cand(v2, i2);
        if (W1.empty() || W2.empty()) return false;
        maybe_shuffle(W1, rng_);
        maybe_shuffle(W2, rng_);

        for (std::size_t k = 0; k + 1 < Q.size(); ++k) sys_.delete_edge(Q[k], Q[k + 1]);
        for (Vertex w1 : W1)
            for (Vertex w2 : W2) {
                if (w1 == w2) continue;
                Edge e1{w1, m(w1)}, e2{w2, m(w2)};
                auto k1 = piece(w1, e1, e2), k2 = piece(w2, e1, e2), kv = piece(v1, e1, e2);
                if (k1 == k2 || k1 == kv || k2 == kv) continue;
                for (std::size_t k = 0; k + 1 < Q.size(); ++k) unavailable(Q[k], Q[k + 1]);
                int cycles_before = sys_.cycle_count() + 1;
                remove(e1.first, e1.second, 5);
                remove(e2.first, e2.second, 5);
                add(v1, w1, 5);
                add(v2, w2, 5);
                for (std::size_t k = 1; k + 1 < Q.size(); ++k) to_s(Q[k], 5);
                check(5, "no-new-cycle", sys_.cycle_count() < cycles_before);
                return true;
            }
        for (std::size_t k = 0; k + 1 < Q.size(); ++k) sys_.insert_edge(Q[k], Q[k + 1]);
        return false;
    }

    void step5() {
        const int s = 5;
        long guard = 0;
        for (;;) {
            std::vector<int> cycles;
            for (int c : sys_.components())
                if (sys_.kind(c) == CompKind::Cycle) cycles.push_back(c);
            if (cycles.empty()) break;
            if (++guard > n_) fail(s, "cycle removal does not terminate");
            int c = cycles[pick_index(cycles.size(), rng_)];
            auto walk = sys_.walk(c);
            const int L = static_cast<int>(walk.size());
            if (L <= 25) {
                for (int j = 0; j < L; ++j) remove(walk[j], walk[(j + 1) % L], s);
                for (Vertex v : walk) to_s(v, s);
                tally(s, "1");
                continue;
            }
            std::vector<int> b2;
            for (int i = 0; i < L; ++i)
                if (pt(walk[i]) == Part::B2) b2.push_back(i);
            int best = -1, best_gap = L + 1;
            for (std::size_t j = 0; j < b2.size() && b2.size() >= 2; ++j) {
                int a = b2[j], b = b2[(j + 1) % b2.size()];
                int g = ((b - a) % L + L) % L;
                if (g > 0 && g < best_gap) {
                    best_gap = g;
                    best = a;
                }
            }
            if (best >= 0 && best_gap <= 11) {
                std::vector<Vertex> Q;
                for (int k = 0; k <= best_gap; ++k) Q.push_back(walk[(best + k) % L]);
                for (std::size_t k = 0; k + 1 < Q.size(); ++k) remove(Q[k], Q[k + 1], s);
                for (std::size_t k = 1; k + 1 < Q.size(); ++k) to_s(Q[k], s);
                tally(s, "2");
                continue;
            }
            if (!claim_search(walk)) fail(s, "no cross-component rerouting pair");
            tally(s, "3");
        }
        check(5, "E1", path_intact());
        check(5, "E2", sys_.cycle_count() == 0);
        check(5, "E3", path_ends_in(&SixStep::b2r_or_path));
        check_sizes(5, "E4", 105.0);
    }

    void step6() {
        const int s = 6;
        std::vector<Vertex> ends_bad;
        while (sys_.path_count() >= 2) {
            std::vector<int> paths;
            for (int c : sys_.components())
                if (sys_.kind(c) != CompKind::Cycle) paths.push_back(c);
            if (opt_.pair_order == PairOrder::Random) maybe_shuffle(paths, rng_);
            int c1 = paths[0], c2 = paths[1];
            auto e1 = sys_.endpoints(c1), e2 = sys_.endpoints(c2);
            Vertex x = e1[rng_ && opt_.pair_order == PairOrder::Random ? uniform_below(*rng_, 2) : 0];
            Vertex y = e2[rng_ && opt_.pair_order == PairOrder::Random ? uniform_below(*rng_, 2) : 0];
            auto cand = common_b1_edges(inst_, x, y, in_b1_, res_.D);
            std::vector<Edge> live;
            for (auto e : cand)
                if (sys_.active(e.first) && sys_.active(e.second) && sys_.has_edge(e.first, e.second))
                    live.push_back(e);
            maybe_shuffle(live, rng_);
            bool done = false;
            for (auto [z, zp] : live) {
                int cz = sys_.component(z);
                Vertex near = z, far = zp;
                std::vector<Edge> add_edges;
                if (cz == c1 || cz == c2) {
                    Vertex from = cz == c1 ? x : y;
                    if (sys_.dist_along(from, zp) < sys_.dist_along(from, z)) std::swap(near, far);
                    if (cz == c1)
                        add_edges = {{x, far}, {y, near}};
                    else
                        add_edges = {{y, far}, {x, near}};
                } else {
                    add_edges = {{x, z}, {y, zp}};
                }
                std::vector<Edge> rem{{z, zp}};
                SpliceResult r = sys_.splice(rem, add_edges);
                if (!r.ok()) continue;
                if (r.d_paths != -1 || r.d_cycles != 0) {
                    sys_.splice(add_edges, rem);
                    continue;
                }
                unavailable(z, zp);
                tally(s, cz == c1 || cz == c2 ? "inside" : "third-path");
                done = true;
                break;
            }
            if (!done) fail(s, "no common B1 edge joins the chosen paths");
        }
        check(6, "F1", path_intact());
        check(6, "F2", sys_.component_count() == 1 && sys_.path_count() == 1);
        check(6, "F3", path_ends_in(&SixStep::b2r_or_path));
    }

    void close() {
        const int s = 6;
        if (sys_.component_count() != 1) fail(s, "not a single path");
        int c = sys_.components().front();
        auto e = sys_.endpoints(c);
        Vertex x = e[0], y = e[1];
        if (x == y) fail(s, "single vertex left");
        auto cand = common_b1_edges(inst_, x, y, in_b1_, res_.D);
        std::vector<Edge> live;
        for (auto ed : cand)
            if (sys_.active(ed.first) && sys_.active(ed.second) && sys_.has_edge(ed.first, ed.second))
                live.push_back(ed);
        maybe_shuffle(live, rng_);
        for (auto [z, zp] : live) {
            if (sys_.dist_along(x, zp) < sys_.dist_along(x, z)) std::swap(z, zp);
            std::vector<Edge> rem{{z, zp}}, add_edges{{x, zp}, {y, z}};
            SpliceResult r = sys_.splice(rem, add_edges);
            if (!r.ok()) continue;
            if (sys_.cycle_count() != 1 || sys_.component_count() != 1) {
                sys_.splice(add_edges, rem);
                continue;
            }
            unavailable(z, zp);
            auto walk = sys_.walk(sys_.component(x));
            const auto& P = res_.path;
            auto it = std::find(walk.begin(), walk.end(), P.front());
            std::rotate(walk.begin(), it, walk.end());
            if (walk.size() > 1 && walk[1] != P[1]) std::reverse(walk.begin() + 1, walk.end());
            for (std::size_t i = 0; i < P.size(); ++i)
                if (walk[i] != P[i]) fail(s, "absorbing path not contiguous on the final cycle");
            res_.cycle = std::move(walk);
            tally(s, "closure");
            return;
        }
        fail(s, "no common B1 edge closes the path");
    }

    const Instance& inst_;
    const Partition& part_;
    Rng* rng_;
    const SixStepOptions& opt_;
    int n_;
    PathCycleSystem sys_;
    std::vector<char> in_s_, in_k_, in_u_, in_b1_;
    std::vector<std::array<Vertex, 2>> g1_prime_;
    SixStepResult res_;
};

}  // namespace

SixStepResult run_six_steps(const Instance& inst, const Partition& part, Rng* rng, const SixStepOptions& opt) {
    if (inst.d != 1) throw Error("BadParams", "six-step pipeline needs a perfect matching G");
    if (part.n != inst.n()) throw Error("BadParams", "partition size mismatch");
    SixStep run(inst, part, rng, opt);
    return run.run();
}

SixStepExtractor::SixStepExtractor(const Instance& inst, const SixStepResult& res, Rng* rng,
                                   const SixStepOptions& opt)
    : inst_(inst), res_(res), rng_(rng), opt_(opt), idx_(inst.n(), -1) {
    const auto& C = res_.cycle;
    const int N = static_cast<int>(C.size());
    for (int i = 0; i < N; ++i) idx_[C[i]] = i;
    for (std::size_t i = 0; i < res_.reserve.size(); ++i) order_.emplace_back(res_.reserve[i], res_.absorb_edges[i]);

    // Host edges for the other deleted vertices: distinct G-edges of the cycle
    // outside D with both ends adjacent in H to the vertex.
    std::vector<Edge> pool;
    for (int i = 0; i < N; ++i) {
        Vertex a = C[i], b = C[(i + 1) % N];
        if (inst_.G.has_edge(a, b) && !res_.D.count(edge_key(a, b))) pool.emplace_back(a, b);
    }
    std::vector<char> reserve(inst.n(), 0);
    for (Vertex u : res_.reserve) reserve[u] = 1;
    std::vector<Vertex> rest;
    for (Vertex v : res_.S)
        if (!reserve[v]) rest.push_back(v);
    std::vector<std::vector<int>> opts(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j)
            if (inst_.h_adj(rest[i], pool[j].first) && inst_.h_adj(rest[i], pool[j].second))
                opts[i].push_back(static_cast<int>(j));
    std::vector<int> owner(pool.size(), -1);
    std::vector<char> seen;
    std::function<bool(int)> augment = [&](int i) {
        for (int j : opts[i]) {
            if (seen[j]) continue;
            seen[j] = 1;
            if (owner[j] < 0 || augment(owner[j])) {
                owner[j] = i;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < rest.size(); ++i) {
        seen.assign(pool.size(), 0);
        augment(static_cast<int>(i));
    }
    std::vector<int> edge_of(rest.size(), -1);
    for (std::size_t j = 0; j < pool.size(); ++j)
        if (owner[j] >= 0) edge_of[owner[j]] = static_cast<int>(j);
    for (std::size_t i = 0; i < rest.size(); ++i)
        if (edge_of[i] >= 0) order_.emplace_back(rest[i], pool[edge_of[i]]);
}

std::vector<Vertex> SixStepExtractor::absorb_reserve(std::vector<Vertex> cycle, int count) const {
    if (count == 0) return cycle;
    if (count > static_cast<int>(order_.size())) throw AlgoFailure("extract", "not enough absorbable vertices");
    std::unordered_map<std::uint64_t, Vertex> want;
    for (int j = 0; j < count; ++j) want[edge_key(order_[j].second.first, order_[j].second.second)] = order_[j].first;
    std::vector<Vertex> out;
    out.reserve(cycle.size() + count);
    const std::size_t L = cycle.size();
    int done = 0;
    for (std::size_t i = 0; i < L; ++i) {
        out.push_back(cycle[i]);
        auto f = want.find(edge_key(cycle[i], cycle[(i + 1) % L]));
        if (f != want.end()) {
            out.push_back(f->second);
            want.erase(f);
            ++done;
        }
    }
    if (done != count) throw AlgoFailure("extract", "absorbing edge missing from cycle");
    return out;
}

bool SixStepExtractor::short_construction(int k, std::vector<Vertex>& out) {
    const auto& C = res_.cycle;
    const int N = static_cast<int>(C.size());
    const int L = k - 2;
    if (L < 1 || L > N) return false;
    int offset = rng_ ? static_cast<int>(uniform_below(*rng_, N)) : 0;
    for (int t = 0; t < N; ++t) {
        int s = (offset + t) % N;
        Vertex x = C[s], y = C[(s + L - 1) % N];
        auto inside = [&](Vertex v) { return idx_[v] >= 0 && (idx_[v] - s + N) % N < L; };
        std::vector<Edge> cand;
        for (Vertex z : inst_.H.neighbors(x)) {
            if (inside(z)) continue;
            for (Vertex zp : inst_.G.neighbors(z))
                if (!inside(zp) && zp != z && inst_.h_adj(y, zp)) cand.emplace_back(z, zp);
        }
        if (cand.empty()) continue;
        auto [z, zp] = cand[pick_index(cand.size(), rng_)];
        out.clear();
        for (int i = 0; i < L; ++i) out.push_back(C[(s + i) % N]);
        out.push_back(zp);
        out.push_back(z);
        return true;
    }
    return false;
}

bool SixStepExtractor::middle_construction(int k, std::vector<Vertex>& out) {
    const auto& C = res_.cycle;
    const int N = static_cast<int>(C.size());
    const int L = k - 2;
    const int p = static_cast<int>(res_.path.size());
    const int t = static_cast<int>(res_.reserve.size());
    if (L < p || L > N) return false;
    std::vector<int> offsets(L - p + 1);
    std::iota(offsets.begin(), offsets.end(), 0);
    maybe_shuffle(offsets, rng_);
    if (offsets.size() > 64) offsets.resize(64);
    for (int o : offsets) {
        int s = (N - o) % N;
        Vertex x = C[s], y = C[(s + L - 1) % N];
        auto rel = [&](Vertex v) { return idx_[v] < 0 ? -1 : (idx_[v] - s + N) % N; };
        auto in_win = [&](Vertex v) { int r = rel(v); return r >= 0 && r < L; };
        std::vector<Edge> outside, back, fwd;
        for (Vertex z : inst_.H.neighbors(x))
            for (Vertex zp : inst_.G.neighbors(z)) {
                if (!inst_.h_adj(y, zp) || res_.D.count(edge_key(z, zp))) continue;
                bool a = in_win(z), b = in_win(zp);
                if (!a && !b)
                    outside.emplace_back(z, zp);
                else if (a && b)
                    (rel(zp) < rel(z) ? back : fwd).emplace_back(z, zp);
            }
        std::vector<Vertex> win;
        for (int i = 0; i < L; ++i) win.push_back(C[(s + i) % N]);
        if (!outside.empty()) {
            auto [z, zp] = outside[pick_index(outside.size(), rng_)];
            out = std::move(win);
            out.push_back(zp);
            out.push_back(z);
            return true;
        }
        if (!back.empty() && t >= 2) {
            auto [z, zp] = back[pick_index(back.size(), rng_)];
            if (rel(z) - rel(zp) == 1) {
                std::vector<Vertex> c(win.begin(), win.begin() + rel(zp) + 1);
                for (int i = L - 1; i >= rel(z); --i) c.push_back(win[i]);
                out = absorb_reserve(std::move(c), 2);
                return true;
            }
        }
        std::sort(fwd.begin(), fwd.end(), [&](const Edge& a, const Edge& b) { return rel(a.first) < rel(b.first); });
        std::vector<Edge> disjoint;
        std::vector<char> taken(inst_.n(), 0);
        for (auto e : fwd) {
            if (taken[e.first] || taken[e.second] || rel(e.second) != rel(e.first) + 1) continue;
            taken[e.first] = taken[e.second] = 1;
            disjoint.push_back(e);
        }
        std::vector<std::pair<int, std::size_t>> pairs;
        for (std::size_t i = 0; i + 1 < disjoint.size(); ++i)
            pairs.emplace_back(rel(disjoint[i + 1].first) - rel(disjoint[i].first), i);
        std::sort(pairs.begin(), pairs.end());
        for (auto [ell, i] : pairs) {
            if (ell > t) break;
            Vertex zp = disjoint[i].second, w = disjoint[i + 1].first;
            int pstart = o, pend = o + p - 1;
            if (!(pend <= rel(zp) || pstart >= rel(w))) continue;
            std::vector<Vertex> c(win.begin(), win.begin() + rel(zp) + 1);
            for (int j = L - 1; j >= rel(w); --j) c.push_back(win[j]);
            out = absorb_reserve(std::move(c), ell);
            return true;
        }
    }
    return false;
}

std::vector<Vertex> SixStepExtractor::extract(int k) {
    const int n = inst_.n();
    if (k < 3 || k > n) throw Error("BadParams", "cycle length out of range");
    const int N = base_length();
    if (k >= N) {
        int need = k - N;
        if (need > absorbable())
            throw AlgoFailure("extract", "long regime: " + std::to_string(absorbable()) + " of " +
                                             std::to_string(n - N) + " deleted vertices absorbable");
        return absorb_reserve(res_.cycle, need);
    }
    std::vector<Vertex> out;
    if (k <= inst_.alpha * inst_.alpha * n / 10.0) {
        if (short_construction(k, out)) return out;
        throw AlgoFailure("extract", "short regime: no closing edge off any window");
    }
    if (middle_construction(k, out)) return out;
    ++fallbacks_;
    if (short_construction(k, out)) return out;
    throw AlgoFailure("extract", "middle regime: no placement closes and short construction failed");
}

MatchingPipelineResult pancyclic_witness_matching(const Instance& inst, Rng* rng, const SixStepOptions& opt) {
    if (inst.d != 1) throw Error("BadParams", "matching pipeline needs d = 1");
    const int n = inst.n();
    MatchingPipelineResult out;
    Matching M = max_matching(inst.H);
    out.matching_size = M.size;

    auto certify = [&](int k, std::vector<Vertex> c) {
        CycleCheck chk = validate_cycle(inst.host, c, k);
        if (!chk.ok)
            out.failures.push_back({k, "validate", chk.violation});
        else
            out.cycles.emplace(k, std::move(c));
    };

    if (2.0 * M.size > n - std::sqrt(static_cast<double>(n))) {
        out.mode = "matching-augmented";
        auto edges = M.edges();
        Absorb2Options o;
        o.randomized = opt.randomized;
        o.strict = opt.strict;
        o.matching = &edges;
        try {
            WitnessResult w = pancyclic_witness(inst, rng, o);
            out.base_length = w.base_length;
            out.fallbacks = w.fallbacks;
            out.failures = w.failures;
            for (auto& [k, c] : w.cycles) certify(k, c);
        } catch (const Error& e) {
            out.failures.push_back({std::nullopt, "precondition", e.what()});
        }
        return out;
    }

    out.mode = "six-step";
    try {
        out.partition = make_partition(inst.H, M, inst.alpha, opt.eta, opt.strict);
    } catch (const Error& e) {
        out.failures.push_back({std::nullopt, "partition", e.what()});
        return out;
    }
    out.partition_check = check_partition_properties(inst.H, *out.partition);
    if (!out.partition_check->ok()) {
        out.failures.push_back({std::nullopt, "partition", out.partition_check->violations.front()});
        return out;
    }
    SixStepResult res;
    try {
        res = run_six_steps(inst, *out.partition, rng, opt);
    } catch (const AlgoFailure& f) {
        out.failures.push_back({std::nullopt, f.stage(), f.reason()});
        return out;
    }
    out.trace = res.trace;
    out.base_length = static_cast<int>(res.cycle.size());
    SixStepExtractor ex(inst, res, rng, opt);
    for (int k = 3; k <= n; ++k) {
        try {
            certify(k, ex.extract(k));
        } catch (const AlgoFailure& f) {
            out.failures.push_back({k, f.stage(), f.reason()});
        }
    }
    out.fallbacks = ex.fallback_count();
    return out;
}

}  // namespace rpg
