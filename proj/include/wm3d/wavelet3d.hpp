#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wm3d/media_io.hpp"

namespace wm3d {

inline constexpr int kSpatialLevels = 3;

/// Real-valued coefficient plane, row-major, same size as the source frame.
struct CoeffFrame {
    int width = 0;
    int height = 0;
    std::vector<double> values;
    /// 0 before the spatial transform, kSpatialLevels after it.
    int spatial_levels = 0;

    CoeffFrame() = default;
    CoeffFrame(int w, int h, double fill = 0.0);
    static CoeffFrame from_luma(const LumaFrame& frame);

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
};

/// Temporal coefficient frames of one shot, ordered
/// [DC, coarsest detail, ..., finest detail]; frame 0 is the DC frame.
struct CoeffVolume {
    std::vector<CoeffFrame> frames;
    int original_length = 0;
    int padded_length = 0;
    int temporal_levels = 0;
};

enum class Band { LL, HL, LH, HH };

std::string_view band_name(Band band);

/// Region of a Mallat-layout coefficient frame.
struct SubbandRect {
    int row0 = 0;
    int col0 = 0;
    int rows = 0;
    int cols = 0;

    bool contains(int row, int col) const {
        return row >= row0 && row < row0 + rows && col >= col0 && col < col0 + cols;
    }
    bool operator==(const SubbandRect&) const = default;
};

/// Mallat layout with LL top-left. LH is lowpass along rows and highpass
/// along columns, i.e. the block below LL: rows [H/2^L, H/2^(L-1)), cols [0, W/2^L).
SubbandRect subband_rect(int width, int height, Band band, int level);

/// Smallest power of two >= n (n >= 1).
int next_pow2(int n);

/// Full dyadic orthonormal Haar analysis along time. Frames are padded to a
/// power of two by repeating the last frame.
CoeffVolume temporal_forward(std::span<const LumaFrame> frames);
CoeffVolume temporal_forward(std::span<const CoeffFrame> frames);

/// Exact synthesis; padding frames are dropped, leaving original_length frames.
std::vector<CoeffFrame> temporal_inverse(const CoeffVolume& volume);

/// Three-level separable orthonormal Haar (rows then columns per level).
CoeffFrame spatial_forward3(const CoeffFrame& frame);
CoeffFrame spatial_inverse3(const CoeffFrame& frame);

/// Orthonormal Haar analysis of one 1-D signal of power-of-two length,
/// in place, Mallat ordering. Exposed for tests.
void haar_forward_1d(std::span<double> signal, std::span<double> scratch);
void haar_inverse_1d(std::span<double> signal, std::span<double> scratch);

}  // namespace wm3d
