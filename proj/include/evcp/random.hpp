#pragma once

#include <cstdint>
#include <random>

namespace evcp {

using Rng = std::mt19937_64;

/// Stage tags used when deriving independent RNG streams from a master seed.
enum class StreamTag : std::uint64_t {
    instance = 1,
    anneal = 2,
    ga_init = 3,
    ga_evolve = 4,
    tuner = 5,
    run = 6,
};

constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic child seed for (master, index, tag). Distinct inputs give
/// statistically independent streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, StreamTag tag) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ (index + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
    return h;
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index, StreamTag tag) {
    return Rng(derive_seed(master, index, tag));
}

}  // namespace evcp
