#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, index), so any partition of the work reproduces the same
// samples.

#include <cstdint>

namespace mahler {

inline constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
public:
    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed ^ splitmix64(stream))) {}

    constexpr std::uint64_t bits(std::uint64_t index) const { return splitmix64(key_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)); }

    // Uniform in [0, 1).
    double uniform(std::uint64_t index) const { return static_cast<double>(bits(index) >> 11) * 0x1p-53; }

    double uniform(std::uint64_t index, double lo, double hi) const { return lo + (hi - lo) * uniform(index); }

private:
    std::uint64_t key_;
};

} // namespace mahler
