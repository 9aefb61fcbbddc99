#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wm3d/media_io.hpp"

namespace wm3d {

inline constexpr double kDefaultShotThreshold = 0.35;

/// Frame indices [0, b1, ..., frame_count]; shot i covers [b_i, b_{i+1}).
struct ShotBoundaryList {
    std::vector<int> boundaries;

    std::size_t shot_count() const { return boundaries.empty() ? 0 : boundaries.size() - 1; }
    int shot_begin(std::size_t i) const { return boundaries[i]; }
    int shot_end(std::size_t i) const { return boundaries[i + 1]; }
    int shot_length(std::size_t i) const { return boundaries[i + 1] - boundaries[i]; }
    int frame_count() const { return boundaries.empty() ? 0 : boundaries.back(); }

    /// Throws FormatError unless strictly increasing from 0 with >= 1 shot.
    void validate() const;

    bool operator==(const ShotBoundaryList&) const = default;
};

/// Sorted indices of the shots that carry the watermark.
struct ShotSelection {
    std::vector<int> selected;
    bool operator==(const ShotSelection&) const = default;
};

/// Normalized 64-bin luma histogram L1 distance between two frames, in [0, 1].
double histogram_distance(const LumaFrame& a, const LumaFrame& b);

/// Cuts between frames k-1 and k wherever histogram_distance exceeds `threshold`.
ShotBoundaryList detect_shots(const VideoClip& clip, double threshold = kDefaultShotThreshold);

/// Parses a manual "a:b,c:d" list of half-open frame ranges. The ranges must
/// tile [0, frame_count) in order.
ShotBoundaryList parse_shot_ranges(const std::string& spec, int frame_count);

/// Keyed selection: eligible shots (length >= min_length) are ordered by
/// keyed_hash(seed3, {index}) and the first ceil(fraction * eligible) kept.
ShotSelection select_shots(const ShotBoundaryList& shots, std::uint64_t seed3, double fraction,
                           int min_length);

}  // namespace wm3d
