#pragma once

#include <cstdint>

namespace purify {

/// Deterministic 64-bit generator (SplitMix64). Every seeded draw in the
/// library goes through this so that identical seeds reproduce bit-identical
/// runs across builds and platforms. Recurrence:
///   state += 0x9E3779B97F4A7C15
///   z = state; z ^= z>>30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z>>27; z *= 0x94D049BB133111EB; z ^= z>>31
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1), open at both ends (safe to take log of).
    double uniform01_open() {
        return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
    }

    /// Uniform on [-1, 1).
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

private:
    std::uint64_t state_;
};

}  // namespace purify
