#pragma once

/// Seed plumbing. All randomness in the library flows through explicit
/// std::mt19937_64 instances; batch work derives independent per-item
/// streams with derive_seed so parallel order never changes results.

#include <cstdint>
#include <random>

namespace sopose {

/// SplitMix64 step. Good enough to whiten consecutive counters into
/// independent-looking seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for the index-th substream of a run seeded with `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
/// Used instead of std::uniform_real_distribution so that sequences are
/// pinned by the mt19937_64 spec, not by the standard library build.
inline double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_double(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_double(rng);
}

/// Standard normal via Box-Muller on pinned uniform draws.
inline double normal_double(std::mt19937_64& rng) {
    double u1 = uniform_double(rng);
    double u2 = uniform_double(rng);
    while (u1 <= 0.0) u1 = uniform_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586232 * u2);
}

}  // namespace sopose
