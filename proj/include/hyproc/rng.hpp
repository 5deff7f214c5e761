#pragma once

#include <cstdint>
#include <random>

#include "hyproc/types.hpp"

namespace hyproc {

/// SplitMix64 finalizer; good avalanche for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic stream id for a benchmark trial, keyed by
/// (seed, dimension, set size, trial index). Independent of execution order.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t d,
                                       std::uint64_t n, std::uint64_t trial) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ d);
    h = mix64(h ^ n);
    h = mix64(h ^ trial);
    return h;
}

/// Vector of d iid standard normal samples.
inline Vec normal_vector(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    return v;
}

} // namespace hyproc
