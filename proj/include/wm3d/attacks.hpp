#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "wm3d/media_io.hpp"

namespace wm3d {

enum class AttackKind { Drop, Average, Swap, Compress, Noise };

struct AttackSpec {
    AttackKind kind = AttackKind::Swap;
    int quality = 75;         // compress
    double sigma = 2.0;       // noise
    std::uint64_t seed = 0;   // noise
};

AttackKind parse_attack_kind(const std::string& name);
std::string attack_name(AttackKind kind);

/// Even (0-based) frames replaced by the matching original frames.
VideoClip attack_drop(const VideoClip& watermarked, const VideoClip& original);

/// Interior frames become round((F[k-1] + F[k] + F[k+1]) / 3), computed from
/// the input clip; first and last frames are kept.
VideoClip attack_average(const VideoClip& clip);

/// Odd frames become copies of the preceding frame.
VideoClip attack_swap(const VideoClip& clip);

/// Intra-only JPEG-style proxy for lossy video coding: 8x8 DCT, quantization
/// by the standard luminance table scaled by the IJG quality rule.
VideoClip attack_compress(const VideoClip& clip, int quality);
LumaFrame compress_frame(const LumaFrame& frame, int quality);
/// The scaled 8x8 quantization table, row-major.
std::array<int, 64> quantization_table(int quality);

/// Additive keyed Gaussian noise (Box-Muller over SplitMix64).
VideoClip attack_noise(const VideoClip& clip, double sigma, std::uint64_t seed);

/// Dispatches on spec.kind; `original` is required for Drop.
VideoClip apply_attack(const VideoClip& clip, const AttackSpec& spec, const VideoClip* original = nullptr);

}  // namespace wm3d
