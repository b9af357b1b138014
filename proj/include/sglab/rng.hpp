#pragma once

#include <cstdint>

namespace sglab {

// SplitMix64: counter-mode 64-bit generator built from shifts, xors and two
// multiplies. The output at index n is a pure function of (seed, n), so
// stepsize schedules admit O(1) random access and are reproducible across
// platforms. Constants are the standard SplitMix64 set:
//   increment  0x9E3779B97F4A7C15 (2^64 / golden ratio)
//   mixers     0xBF58476D1CE4E5B9, 0x94D049BB133111EB
//   shifts     30, 27, 31
struct SplitMix64 {
    static constexpr std::uint64_t kIncrement = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kMixerA = 0xBF58476D1CE4E5B9ULL;
    static constexpr std::uint64_t kMixerB = 0x94D049BB133111EBULL;

    static std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + (index + 1) * kIncrement;
        z = (z ^ (z >> 30)) * kMixerA;
        z = (z ^ (z >> 27)) * kMixerB;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) using the top 53 bits.
    static double uniform01(std::uint64_t seed, std::uint64_t index) {
        return static_cast<double>(at(seed, index) >> 11) * 0x1.0p-53;
    }
};

} // namespace sglab
