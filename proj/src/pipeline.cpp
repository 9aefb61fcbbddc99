#include "wm3d/pipeline.hpp"

#include "wm3d/error.hpp"

namespace wm3d {

EmbedResult embed_clip(const VideoClip& clip, const WatermarkImage& wm, const EmbedOptions& options) {
    clip.validate();
    const auto& params = options.params;
    if (!(params.alpha >= 0.0 && params.alpha < 1.0)) {
        throw UsageError("alpha must lie in [0, 1)");
    }
    // Capacity check up front so a bad geometry fails before any work.
    watermark_rect(clip.width(), clip.height(), wm.width, wm.height, params.band, params.region_row0,
                   params.region_col0);

    ShotBoundaryList shots = options.manual_shots ? *options.manual_shots
                                                  : detect_shots(clip, options.shot_threshold);
    shots.validate();
    if (shots.frame_count() != static_cast<int>(clip.frame_count())) {
        throw UsageError("shot boundaries do not cover the clip");
    }
    const ShotSelection selection = select_shots(shots, options.seed3, options.select_fraction, kMinShotLength);
    const SignPlanes wd = prepare_watermark(wm, options.prep);

    EmbedResult result;
    result.watermarked = clip;
    KeyBundle& key = result.key;
    key.seed1 = options.prep.seed1;
    key.seed2 = options.prep.seed2;
    key.seed3 = options.seed3;
    key.alpha = params.alpha;
    key.wm_width = wm.width;
    key.wm_height = wm.height;
    key.band = params.band;
    key.row0 = params.region_row0;
    key.col0 = params.region_col0;
    key.shots = shots;
    key.selection = selection;

    for (int s : selection.selected) {
        const auto begin = static_cast<std::size_t>(shots.shot_begin(s));
        const auto len = static_cast<std::size_t>(shots.shot_length(s));
        auto shot = embed_shot(std::span<const LumaFrame>(clip.frames).subspan(begin, len), wd, params);
        std::move(shot.frames.begin(), shot.frames.end(),
                  result.watermarked.frames.begin() + static_cast<std::ptrdiff_t>(begin));
        key.records.push_back({s, std::move(shot.realized)});
    }
    return result;
}

}  // namespace wm3d
