#include "rpg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "rpg/config_model.hpp"
#include "rpg/rng.hpp"

namespace rpg {

long double expected_components_2factor(int n) {
    if (n < 1) throw Error("BadParams", "n must be positive");
    long double s = 0.0L;
    for (int i = n; i >= 1; --i) s += 1.0L / (2.0L * i - 1.0L);
    return s;
}

std::string expected_components_2factor_exact(int n) {
    if (n < 1) throw Error("BadParams", "n must be positive");
    boost::multiprecision::cpp_rational s = 0;
    for (int i = 1; i <= n; ++i) s += boost::multiprecision::cpp_rational(1, 2 * i - 1);
    return s.str();
}

namespace {

struct TrialOut {
    double components = 0, cycles = 0, shared = 0, simple = 0;
};

TrialOut one_trial(StatsModel model, int n, Rng& rng) {
    TrialOut t;
    if (model == StatsModel::TwoFactor) {
        Multigraph g = project(sample_configuration(n, 2, rng));
        t.components = t.cycles = g.component_count();
        t.simple = g.is_simple();
        return t;
    }
    Multigraph g = project(sample_configuration(n, 1, rng));
    Multigraph u(n);
    for (Vertex v = 0; v + 1 < n; v += 2) u.add_edge(v, v + 1);
    for (auto [a, b] : g.edges()) {
        u.add_edge(a, b);
        t.shared += (std::min(a, b) % 2 == 0 && std::max(a, b) == std::min(a, b) + 1);
    }
    t.components = t.cycles = u.component_count();
    t.simple = 1;
    return t;
}

double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
}

}  // namespace

ComponentStats component_stats(StatsModel model, int n, int trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw Error("BadParams", "trials must be positive");
    if (n < 1 || (model == StatsModel::MatchingUnion && n % 2))
        throw Error("BadParams", "n must be positive (and even for the matching model)");
    std::vector<TrialOut> out(trials);
    threads = std::max(1, std::min(threads, trials));
    auto work = [&](int w) {
        for (int i = w; i < trials; i += threads) {
            Rng rng = substream(seed, static_cast<std::uint64_t>(i));
            out[i] = one_trial(model, n, rng);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < threads; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& th : pool) th.join();

    ComponentStats s;
    s.n = n;
    s.d = model == StatsModel::TwoFactor ? 2 : 1;
    s.trials = trials;
    for (const auto& t : out) {
        s.components.push_back(t.components);
        s.cycles.push_back(t.cycles);
        s.simple.push_back(t.simple);
        if (model == StatsModel::MatchingUnion) s.shared_edges.push_back(t.shared);
    }
    s.mean_components = mean_of(s.components);
    s.mean_cycles = mean_of(s.cycles);
    double v = 0;
    for (double x : s.components) v += (x - s.mean_components) * (x - s.mean_components);
    s.var_components = trials > 1 ? v / (trials - 1) : 0.0;
    return s;
}

int edge_distribution_count(const StaticGraph& G, const std::vector<Vertex>& A, const std::vector<Vertex>& B) {
    std::vector<char> in_b(G.n(), 0);
    for (Vertex v : B) in_b[v] = 1;
    int c = 0;
    for (Vertex z : A)
        c += std::any_of(G.neighbors(z).begin(), G.neighbors(z).end(), [&](Vertex u) { return in_b[u] != 0; });
    return c;
}

KrExpectation kr_expected_components(double n, int r, double alpha) {
    if (r < 1) throw Error("BadParams", "r must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("BadParams", "alpha must lie in (0, 1)");
    KrExpectation e;
    e.per_size.assign(r + 1, 0.0);
    double binom = 1.0;
    for (int s = 0; s <= r; ++s) {
        if (s > 0) binom = binom * (r - s + 1) / s;
        e.per_size[s] = n / r * binom * std::pow(1.0 - alpha, s) * std::pow(alpha, r - s);
        if (s > 0) e.sum_per_size += e.per_size[s];
    }
    e.total = n / r * (1.0 - std::pow(alpha, r));
    return e;
}

double kr_threshold_root(int r) {
    if (r < 1) throw Error("BadParams", "r must be at least 1");
    auto f = [r](double x) { return std::pow(x, r) + r * x - 1.0; };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-15) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Summary summarize(std::vector<double> v) {
    Summary s;
    s.count = static_cast<int>(v.size());
    if (v.empty()) return s;
    std::sort(v.begin(), v.end());
    s.mean = mean_of(v);
    double acc = 0;
    for (double x : v) acc += (x - s.mean) * (x - s.mean);
    s.stddev = v.size() > 1 ? std::sqrt(acc / (v.size() - 1)) : 0.0;
    auto q = [&](double p) {
        double pos = p * (v.size() - 1);
        std::size_t i = static_cast<std::size_t>(pos);
        double f = pos - i;
        return i + 1 < v.size() ? v[i] * (1 - f) + v[i + 1] * f : v[i];
    };
    s.min = v.front();
    s.q25 = q(0.25);
    s.median = q(0.5);
    s.q75 = q(0.75);
    s.max = v.back();
    return s;
}

void write_stats_csv(std::ostream& out, const ComponentStats& s) {
    out << "trial,n,d,statistic,value\n";
    for (int i = 0; i < s.trials; ++i) {
        out << i << ',' << s.n << ',' << s.d << ",components," << s.components[i] << '\n';
        out << i << ',' << s.n << ',' << s.d << ",cycles," << s.cycles[i] << '\n';
        if (!s.shared_edges.empty())
            out << i << ',' << s.n << ',' << s.d << ",shared_edges," << s.shared_edges[i] << '\n';
        out << i << ',' << s.n << ',' << s.d << ",simple," << s.simple[i] << '\n';
    }
}

std::string stats_summary_json(const ComponentStats& s) {
    auto js = [](const Summary& m) {
        return nlohmann::json{{"count", m.count}, {"mean", m.mean}, {"stddev", m.stddev}, {"min", m.min},
                              {"q25", m.q25},     {"median", m.median}, {"q75", m.q75}, {"max", m.max}};
    };
    nlohmann::json j;
    j["n"] = s.n;
    j["d"] = s.d;
    j["trials"] = s.trials;
    j["components"] = js(summarize(s.components));
    j["cycles"] = js(summarize(s.cycles));
    j["simple"] = js(summarize(s.simple));
    if (!s.shared_edges.empty()) j["shared_edges"] = js(summarize(s.shared_edges));
    if (s.d == 2) j["expected_components"] = static_cast<double>(expected_components_2factor(s.n));
    double l = std::log(static_cast<double>(s.n));
    j["log_sq_n"] = l * l;
    return j.dump(2);
}

double chi_square_sf(double stat, int dof) {
    if (dof < 1) throw Error("BadParams", "dof must be positive");
    if (stat <= 0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

}  // namespace rpg
