#include "rpg/config_model.hpp"

#include <algorithm>
#include <string>

namespace rpg {

Configuration::Configuration(int n, int d) : n_(n), d_(d) {
    if (n < 0) throw Error("BadParams", "negative vertex count");
    if (d != 1 && d != 2) throw Error("BadParams", "degree must be 1 or 2");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw Error("ParityError", "n*d = " + std::to_string(static_cast<long long>(n) * d) + " is odd");
    partner_.assign(static_cast<std::size_t>(n) * d, -1);
}

bool Configuration::complete() const {
    return std::all_of(partner_.begin(), partner_.end(), [](int q) { return q >= 0; });
}

void Configuration::pair(int p, int q) {
    partner_[p] = q;
    partner_[q] = p;
}

void Configuration::unpair(int p) {
    int q = partner_[p];
    partner_[p] = -1;
    if (q >= 0) partner_[q] = -1;
}

std::vector<PointPair> Configuration::pairs() const {
    std::vector<PointPair> out;
    for (int p = 0; p < point_count(); ++p)
        if (partner_[p] > p) out.emplace_back(p, partner_[p]);
    return out;
}

PivotRule lowest_uncovered_pivot() {
    return [](const PairingView& v) { return v.lowest_uncovered; };
}

PivotRule finish_component_pivot() {
    return [](const PairingView& v) {
        if (v.last_y >= 0 && v.cfg.d() == 2) {
            Vertex j = v.cfg.owner(v.last_y);
            int other = v.cfg.point(j, 1 - v.cfg.slot(v.last_y));
            if (!v.cfg.covered(other)) return other;
        }
        return v.lowest_uncovered;
    };
}

PivotRule partner_of_previous_pivot(std::vector<Vertex> sigma) {
    return [sigma = std::move(sigma)](const PairingView& v) {
        if (v.last_y >= 0 && v.cfg.d() == 1) {
            int other = v.cfg.point(sigma[v.cfg.owner(v.last_y)], 0);
            if (!v.cfg.covered(other)) return other;
        }
        return v.lowest_uncovered;
    };
}

namespace {

// Pairs every uncovered point of cfg. Uncovered points live in a swap-remove
// vector so the uniform partner draw is O(1).
void complete_pairing(Configuration& cfg, Rng& rng, const PivotRule& pivot) {
    const int np = cfg.point_count();
    std::vector<int> pool, where(np, -1);
    pool.reserve(np);
    for (int p = 0; p < np; ++p)
        if (!cfg.covered(p)) {
            where[p] = static_cast<int>(pool.size());
            pool.push_back(p);
        }
    auto take = [&](int p) {
        int i = where[p];
        int last = pool.back();
        pool[i] = last;
        where[last] = i;
        pool.pop_back();
        where[p] = -1;
    };
    int lo = 0;
    int last_x = -1, last_y = -1;
    while (!pool.empty()) {
        while (lo < np && cfg.covered(lo)) ++lo;
        int x = lo;
        if (pivot) {
            PairingView view{cfg, last_x, last_y, lo};
            x = pivot(view);
            if (x < 0 || x >= np || cfg.covered(x)) throw Error("BadPivot", "pivot returned a covered point");
        }
        take(x);
        int y = pool[uniform_below(rng, pool.size())];
        take(y);
        cfg.pair(x, y);
        last_x = x;
        last_y = y;
    }
}

}  // namespace

Configuration sample_configuration(int n, int d, Rng& rng, const PivotRule& pivot) {
    Configuration cfg(n, d);
    complete_pairing(cfg, rng, pivot);
    return cfg;
}

Configuration sample_conditioned(int n, int d, const std::vector<PointPair>& forced, Rng& rng,
                                 const PivotRule& pivot) {
    Configuration cfg(n, d);
    for (auto [p, q] : forced) {
        if (p < 0 || q < 0 || p >= cfg.point_count() || q >= cfg.point_count())
            throw Error("ConflictingPairs", "forced pair point out of range");
        if (p == q || cfg.covered(p) || cfg.covered(q))
            throw Error("ConflictingPairs", "forced pairs are not disjoint");
        cfg.pair(p, q);
    }
    complete_pairing(cfg, rng, pivot);
    return cfg;
}

Multigraph project(const Configuration& cfg) {
    Multigraph g(cfg.n());
    for (auto [p, q] : cfg.pairs()) g.add_edge(cfg.owner(p), cfg.owner(q));
    return g;
}

StaticGraph sample_simple_regular(int n, int d, Rng& rng, int max_attempts, int* attempts_used) {
    if ((static_cast<long long>(n) * d) % 2 != 0) throw Error("ParityError", "n*d is odd");
    for (int a = 1; a <= max_attempts; ++a) {
        Multigraph g = project(sample_configuration(n, d, rng));
        if (g.is_simple()) {
            if (attempts_used) *attempts_used = a;
            return StaticGraph(n, g.edges());
        }
    }
    if (attempts_used) *attempts_used = max_attempts;
    throw Error("AttemptsExhausted", "no simple graph after " + std::to_string(max_attempts) + " attempts");
}

Configuration switch_pairs(const Configuration& cfg, int p1, int p2, bool crossing) {
    auto valid = [&](int p) { return p >= 0 && p < cfg.point_count() && cfg.covered(p); };
    if (!valid(p1) || !valid(p2)) throw Error("NotInConfiguration", "anchor point is not matched");
    int q1 = cfg.partner(p1), q2 = cfg.partner(p2);
    if (p1 == p2 || q1 == p2) throw Error("SharedPoint", "the two pairs share a point");
    Configuration out = cfg;
    if (crossing) {
        out.pair(p1, q2);
        out.pair(p2, q1);
    } else {
        out.pair(p1, p2);
        out.pair(q1, q2);
    }
    return out;
}

}  // namespace rpg
