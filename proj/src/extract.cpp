#include "wm3d/extract.hpp"

#include "wm3d/embed.hpp"
#include "wm3d/error.hpp"
#include "wm3d/metrics.hpp"

namespace wm3d {

int recover_sign(double t, double r, int wk) {
    if ((t > r && wk == 1) || (t < r && wk == -1)) {
        return 1;
    }
    return -1;
}

SignPlane extract_plane(const CoeffFrame& frame, const SignPlane& wk, const SubbandRect& subband,
                        const SubbandRect& wm_rect) {
    if (frame.spatial_levels != kSpatialLevels) {
        throw GeometryError("extraction needs a 3-level spatially transformed frame");
    }
    if (wk.width != wm_rect.cols || wk.height != wm_rect.rows) {
        throw GeometryError("key plane does not match the watermark rectangle");
    }
    SignPlane out{wk.width, wk.height, wk.plane_index, std::vector<std::int8_t>(wk.signs.size())};
    for (int r = 0; r < wm_rect.rows; ++r) {
        for (int c = 0; c < wm_rect.cols; ++c) {
            const int fr = wm_rect.row0 + r;
            const int fc = wm_rect.col0 + c;
            const double t = neighbor_max(frame, subband, fr, fc);
            out.signs[static_cast<std::size_t>(r) * wk.width + c] =
                static_cast<std::int8_t>(recover_sign(t, frame.at(fr, fc), wk.at(r, c)));
        }
    }
    return out;
}

ShotExtraction extract_shot(std::span<const LumaFrame> frames, int expected_length, const EmbedRecord& record,
                            const KeyBundle& key) {
    if (frames.empty()) {
        throw FormatError("shot " + std::to_string(record.shot_index) + " has no frames");
    }
    const int w = frames[0].width;
    const int h = frames[0].height;
    const SubbandRect sub = subband_rect(w, h, key.band, kSpatialLevels);
    const SubbandRect rect = watermark_rect(w, h, key.wm_width, key.wm_height, key.band, key.row0, key.col0);

    ShotExtraction out;
    out.shot_index = record.shot_index;
    std::vector<LumaFrame> padded;
    std::span<const LumaFrame> shot = frames;
    if (static_cast<int>(frames.size()) < expected_length) {
        out.length_mismatch = true;
        padded.assign(frames.begin(), frames.end());
        padded.resize(static_cast<std::size_t>(expected_length), frames.back());
        shot = padded;
    }
    if (static_cast<int>(shot.size()) < kMinShotLength) {
        throw GeometryError("shot " + std::to_string(record.shot_index) + " is too short to carry a watermark");
    }
    const CoeffVolume vol = temporal_forward(shot);
    for (int b = 0; b < kBitplanes; ++b) {
        const auto coeff = spatial_forward3(vol.frames[static_cast<std::size_t>(b) + 1]);
        out.recovered[b] = extract_plane(coeff, record.realized[b], sub, rect);
    }
    out.watermark = restore_watermark(out.recovered, key.prep_keys());
    return out;
}

WatermarkImage majority_vote(std::span<const WatermarkImage> images) {
    if (images.empty()) {
        throw FormatError("no watermarks to aggregate");
    }
    WatermarkImage out = images.front();
    const auto n = images.size();
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        unsigned value = 0;
        for (int b = 0; b < kBitplanes; ++b) {
            std::size_t ones = 0;
            for (const auto& img : images) {
                ones += (img.samples[i] >> b) & 1U;
            }
            unsigned bit = 0;
            if (2 * ones > n) {
                bit = 1;
            } else if (2 * ones == n) {
                bit = (images.front().samples[i] >> b) & 1U;
            }
            value |= bit << b;
        }
        out.samples[i] = static_cast<std::uint8_t>(value);
    }
    return out;
}

ExtractionResult extract_clip(const VideoClip& clip, const KeyBundle& key,
                              const std::optional<WatermarkImage>& reference) {
    clip.validate();
    key.validate();
    // Geometry is checked against the received frames before any work.
    watermark_rect(clip.width(), clip.height(), key.wm_width, key.wm_height, key.band, key.row0, key.col0);
    if (reference && (reference->width != key.wm_width || reference->height != key.wm_height)) {
        throw GeometryError("reference watermark dimensions differ from the key");
    }

    ExtractionResult result;
    std::vector<WatermarkImage> images;
    const auto available = static_cast<int>(clip.frame_count());
    for (const auto& rec : key.records) {
        const int begin = key.shots.shot_begin(static_cast<std::size_t>(rec.shot_index));
        const int expected = key.shots.shot_length(static_cast<std::size_t>(rec.shot_index));
        std::span<const LumaFrame> frames(clip.frames);
        if (begin >= available) {
            // The whole shot is gone; fall back to replicating the last frame.
            frames = frames.last(1);
        } else {
            frames = frames.subspan(static_cast<std::size_t>(begin),
                                    static_cast<std::size_t>(std::min(expected, available - begin)));
        }
        auto shot = extract_shot(frames, expected, rec, key);
        if (begin >= available) {
            shot.length_mismatch = true;
        }
        if (reference) {
            shot.nc = nc(*reference, shot.watermark);
        }
        images.push_back(shot.watermark);
        result.shots.push_back(std::move(shot));
    }
    result.aggregate = majority_vote(images);
    if (reference) {
        result.aggregate_nc = nc(*reference, result.aggregate);
    }
    return result;
}

}  // namespace wm3d
