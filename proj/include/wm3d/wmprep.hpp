#pragma once

#include <array>
#include <span>
#include <cstdint>
#include <vector>

#include "wm3d/media_io.hpp"

namespace wm3d {

inline constexpr int kBitplanes = 8;

/// 8-bit grayscale watermark; shares the frame representation.
using WatermarkImage = LumaFrame;

struct Bitplane {
    int width = 0;
    int height = 0;
    int plane_index = 0;
    std::vector<std::uint8_t> bits;  // 0 or 1

    bool operator==(const Bitplane&) const = default;
};

struct SignPlane {
    int width = 0;
    int height = 0;
    int plane_index = 0;
    std::vector<std::int8_t> signs;  // -1 or +1

    std::int8_t at(int row, int col) const { return signs[static_cast<std::size_t>(row) * width + col]; }
    bool operator==(const SignPlane&) const = default;
};

using Bitplanes = std::array<Bitplane, kBitplanes>;
using SignPlanes = std::array<SignPlane, kBitplanes>;

struct PrepKeys {
    std::uint64_t seed1 = 0;  // permutation
    std::uint64_t seed2 = 0;  // disorder mask
};

/// Plane b holds bit b (0 = LSB) of every pixel.
Bitplanes decompose_bitplanes(const WatermarkImage& wm);
/// Planes may arrive in any order but must cover indices 0..7 exactly once.
WatermarkImage compose_bitplanes(std::span<const Bitplane> planes);

/// Fisher-Yates over `count` positions driven by SplitMix64(seed):
/// for i = count-1 .. 1, j = next() % (i+1), swap(p[i], p[j]).
std::vector<std::uint32_t> permutation(std::size_t count, std::uint64_t seed);

/// out[i] = in[perm[i]], with one permutation shared by every plane.
Bitplane permute(const Bitplane& plane, std::uint64_t seed1);
Bitplane unpermute(const Bitplane& plane, std::uint64_t seed1);

/// Keyed mask bit for one position: keyed_hash(seed2, {plane, row, col}) & 1.
std::uint8_t disorder_mask(std::uint64_t seed2, int plane_index, int row, int col);

/// signs = 2 * (bits XOR mask) - 1 for an explicit row-major mask.
SignPlane apply_mask(const Bitplane& plane, std::span<const std::uint8_t> mask);

/// apply_mask with the keyed mask of disorder_mask.
SignPlane disorder(const Bitplane& plane, std::uint64_t seed2);
Bitplane undisorder(const SignPlane& plane, std::uint64_t seed2);

/// decompose -> permute -> disorder for all eight planes (the W^d_k sequence).
SignPlanes prepare_watermark(const WatermarkImage& wm, const PrepKeys& keys);
/// undisorder -> unpermute -> compose.
WatermarkImage restore_watermark(const SignPlanes& planes, const PrepKeys& keys);

}  // namespace wm3d
