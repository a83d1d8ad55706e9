#pragma once

#include <cstdint>
#include <random>

namespace codyn {

/// Per-trajectory random stream. Never shared between trajectories.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
}

/// Seed of run `run` in a batch:
///   seed_r = splitmix64(master_seed ^ splitmix64(run))
/// Pure 64-bit integer arithmetic, identical on every platform.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run) noexcept
{
    return splitmix64(master_seed ^ splitmix64(run));
}

} // namespace codyn
