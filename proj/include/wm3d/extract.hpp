#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wm3d/key_bundle.hpp"
#include "wm3d/media_io.hpp"

namespace wm3d {

/// Recovered W^d_k: +1 iff (t' > R' and W_k = +1) or (t' < R' and W_k = -1);
/// ties give -1.
int recover_sign(double t, double r, int wk);

/// Applies recover_sign over the watermark rectangle of one received
/// coefficient frame, with t' taken from the same frame.
SignPlane extract_plane(const CoeffFrame& frame, const SignPlane& wk, const SubbandRect& subband,
                        const SubbandRect& wm_rect);

struct ShotExtraction {
    int shot_index = 0;
    SignPlanes recovered;
    WatermarkImage watermark;
    /// The received clip had fewer frames than the key recorded for this shot.
    bool length_mismatch = false;
    std::optional<double> nc;
};

/// 3-D analysis of one received shot, sign recovery per plane, then the inverse
/// preparation. `expected_length` short shots are replication-padded.
ShotExtraction extract_shot(std::span<const LumaFrame> frames, int expected_length, const EmbedRecord& record,
                            const KeyBundle& key);

struct ExtractionResult {
    std::vector<ShotExtraction> shots;
    /// Per-bit majority across shots; ties take the lowest-indexed shot's bit.
    WatermarkImage aggregate;
    std::optional<double> aggregate_nc;
};

WatermarkImage majority_vote(std::span<const WatermarkImage> images);

ExtractionResult extract_clip(const VideoClip& clip, const KeyBundle& key,
                              const std::optional<WatermarkImage>& reference = std::nullopt);

}  // namespace wm3d
