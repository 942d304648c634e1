#pragma once

#include <cstdint>

namespace starcong {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014 constants).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the i-th independent sub-stream derived from `seed`.
constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_mix(seed ^ splitmix64_mix(index + 0x9E3779B97F4A7C15ULL));
}

/// Reproducible stream of uniform doubles. The state advances by the golden
/// gamma and each output is the SplitMix64 finalizer of the state, so the
/// sequence depends only on the seed and is identical on every platform.
class SeededRng {
public:
    explicit constexpr SeededRng(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    constexpr double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    constexpr SeededRng substream(std::uint64_t index) const { return SeededRng(mix(state_, index)); }

private:
    std::uint64_t state_;
};

}  // namespace starcong
