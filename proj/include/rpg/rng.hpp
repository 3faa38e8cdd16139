#pragma once
// Seeded randomness. Every trial draws from its own substream:
//   substream(seed, trial) = mt19937_64 seeded with splitmix64(splitmix64(seed) ^ splitmix64(trial + golden))
// Integer draws use rejection on raw 64-bit output so results do not depend on
// the standard library's distribution implementations.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rpg {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Rng substream(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t s = splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x9e3779b97f4a7c15ULL));
    return Rng(s);
}

// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        std::uint64_t r = rng();
        if (r < limit) return r % bound;
    }
}

inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = uniform_below(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

// Picks an index: uniformly when rng is given, else 0 (lowest-index fallback).
inline std::size_t pick_index(std::size_t size, Rng* rng) {
    if (size == 0) throw std::invalid_argument("pick_index: empty candidate set");
    return rng ? uniform_below(*rng, size) : 0;
}

}  // namespace rpg
