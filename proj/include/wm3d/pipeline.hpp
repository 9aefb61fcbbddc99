#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wm3d/key_bundle.hpp"
#include "wm3d/media_io.hpp"

namespace wm3d {

struct EmbedOptions {
    PrepKeys prep{1, 2};
    std::uint64_t seed3 = 3;
    EmbedParams params;
    double shot_threshold = kDefaultShotThreshold;
    double select_fraction = 1.0;
    /// Overrides shot detection when set.
    std::optional<ShotBoundaryList> manual_shots;
};

struct EmbedResult {
    VideoClip watermarked;
    KeyBundle key;
};

/// Shot detection, keyed selection, watermark preparation and per-shot
/// embedding. Unselected shots are copied through unchanged.
EmbedResult embed_clip(const VideoClip& clip, const WatermarkImage& wm, const EmbedOptions& options);

}  // namespace wm3d
