#include "rpg/verify.hpp"

#include <cstdint>

namespace rpg {

CycleCheck validate_cycle(const StaticGraph& host, const std::vector<Vertex>& cycle, int k) {
    const int len = static_cast<int>(cycle.size());
    if (k < 3) return {false, "claimed length " + std::to_string(k) + " < 3"};
    if (len != k) return {false, "length " + std::to_string(len) + " != claimed " + std::to_string(k)};
    std::vector<char> seen(host.n(), 0);
    for (Vertex v : cycle) {
        if (v < 0 || v >= host.n()) return {false, "vertex " + std::to_string(v) + " out of range"};
        if (seen[v]) return {false, "duplicate vertex " + std::to_string(v)};
        seen[v] = 1;
    }
    for (int i = 0; i < len; ++i) {
        Vertex a = cycle[i], b = cycle[(i + 1) % len];
        if (!host.has_edge(a, b))
            return {false, "missing edge " + std::to_string(a) + "-" + std::to_string(b)};
    }
    return {true, {}};
}

std::vector<char> cycle_lengths_bruteforce(const StaticGraph& g) {
    const int n = g.n();
    if (n > kBruteForceMaxN) throw Error("TooLarge", "brute force limited to n <= 16");
    std::vector<char> has(n + 1, 0);
    std::vector<std::uint32_t> nbr(n, 0);
    for (int v = 0; v < n; ++v)
        for (Vertex u : g.neighbors(v)) nbr[v] |= 1U << u;
    int missing = n >= 3 ? n - 2 : 0;
    std::vector<char> dead;
    for (int s = 0; s < n && missing > 0; ++s) {
        // Cycles whose smallest vertex is s; paths start at s and use larger vertices.
        dead.assign(static_cast<std::size_t>(n) << n, 0);
        std::uint32_t allowed = ((1U << n) - 1) & ~((1U << (s + 1)) - 1);
        struct Frame {
            int v;
            std::uint32_t mask;
            std::uint32_t todo;
        };
        std::vector<Frame> stack;
        stack.push_back({s, 1U << s, nbr[s] & allowed});
        while (!stack.empty() && missing > 0) {
            Frame& f = stack.back();
            if (f.todo == 0) {
                dead[(static_cast<std::size_t>(f.v) << n) | f.mask] = 1;
                stack.pop_back();
                continue;
            }
            int u = __builtin_ctz(f.todo);
            f.todo &= f.todo - 1;
            std::uint32_t m2 = f.mask | (1U << u);
            int len = __builtin_popcount(m2);
            if (len >= 3 && (nbr[u] >> s & 1U) && !has[len]) {
                has[len] = 1;
                --missing;
            }
            if (dead[(static_cast<std::size_t>(u) << n) | m2]) continue;
            stack.push_back({u, m2, nbr[u] & allowed & ~m2});
        }
    }
    return has;
}

bool is_pancyclic_bruteforce(const StaticGraph& g) {
    auto has = cycle_lengths_bruteforce(g);
    for (int k = 3; k <= g.n(); ++k)
        if (!has[k]) return false;
    return g.n() >= 3;
}

bool is_hamiltonian_bruteforce(const StaticGraph& g) {
    if (g.n() < 3) return false;
    return cycle_lengths_bruteforce(g)[g.n()] != 0;
}

}  // namespace rpg
