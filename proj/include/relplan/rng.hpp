#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace relplan::rng {

// Deterministic helpers on top of mt19937_64. The standard distribution
// classes are implementation-defined, so every stochastic operation in the
// project draws through these instead; identical seeds then give identical
// streams on any platform.

/// Uniform in [0, 1), 53 bits of precision.
inline double unit(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound); unbiased via rejection. bound must be > 0.
inline std::uint64_t below(std::mt19937_64& gen, std::uint64_t bound)
{
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t v = gen();
    while (v >= limit)
        v = gen();
    return v % bound;
}

/// Uniform in [lo, hi).
inline double uniform(std::mt19937_64& gen, double lo, double hi)
{
    return lo + (hi - lo) * unit(gen);
}

inline bool chance(std::mt19937_64& gen, double p)
{
    return unit(gen) < p;
}

/// SplitMix64 step; used to derive independent case seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace relplan::rng
