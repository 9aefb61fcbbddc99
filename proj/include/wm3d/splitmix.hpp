#pragma once

#include <cstdint>
#include <initializer_list>

namespace wm3d {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// The splitmix64 output function (Steele, Lea & Flood finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Sequential splitmix64 generator. All keyed randomness in the toolkit is
/// derived from this so key files stay portable.
class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double next_unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Keyed hash of a tuple of integers: h0 = seed, h_{i+1} = mix64(h_i + gamma + v_i).
constexpr std::uint64_t keyed_hash(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> values) noexcept {
    std::uint64_t h = seed;
    for (std::uint64_t v : values) {
        h = mix64(h + kGoldenGamma + v);
    }
    return h;
}

}  // namespace wm3d
