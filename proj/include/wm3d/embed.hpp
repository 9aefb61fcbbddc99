#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wm3d/media_io.hpp"
#include "wm3d/shots.hpp"
#include "wm3d/wavelet3d.hpp"
#include "wm3d/wmprep.hpp"

namespace wm3d {

/// Shortest shot that still yields coefficient frames 1..8 (padded length >= 16).
inline constexpr int kMinShotLength = 9;

struct EmbedParams {
    double alpha = 0.1;
    Band band = Band::LH;
    /// Offset of the watermark rectangle inside the level-3 subband.
    int region_row0 = 0;
    int region_col0 = 0;
};

/// Realized W_k planes for one selected shot; plane b went into coefficient frame b+1.
struct EmbedRecord {
    int shot_index = 0;
    SignPlanes realized;

    bool operator==(const EmbedRecord&) const = default;
};

/// Where a wm_width x wm_height watermark lands in a frame of the given size.
/// Throws GeometryError if the frame is not divisible by 8 or the watermark
/// does not fit inside the chosen subband at the chosen offset.
SubbandRect watermark_rect(int frame_width, int frame_height, int wm_width, int wm_height, Band band,
                           int row0, int col0);

/// Max over the (up to 8) neighbours of (row, col) that lie inside `rect`.
/// Returns -infinity when no neighbour lies inside.
double neighbor_max(const CoeffFrame& frame, const SubbandRect& rect, int row, int col);

/// +1 iff (t > r and wd = +1) or (t < r and wd = -1); ties give -1.
int spread_sign(double t, double r, int wd);

struct PlaneEmbedding {
    CoeffFrame frame;
    SignPlane realized;
};

/// R' = R * (1 + alpha * W) over the watermark rectangle; neighbour maxima are
/// all taken from the unmodified frame.
PlaneEmbedding embed_plane(const CoeffFrame& frame, const SignPlane& wd, const SubbandRect& subband,
                           const SubbandRect& wm_rect, double alpha);

struct ShotEmbedding {
    std::vector<LumaFrame> frames;
    SignPlanes realized;
};

/// Full per-shot pipeline: 3-D analysis, eight embed_plane calls on
/// coefficient frames 1..8, synthesis, round-half-away and clamp to 8 bits.
ShotEmbedding embed_shot(std::span<const LumaFrame> frames, const SignPlanes& wd, const EmbedParams& params);

/// Round half away from zero, clamp to [0, 255].
std::uint8_t quantize_sample(double v);

}  // namespace wm3d
