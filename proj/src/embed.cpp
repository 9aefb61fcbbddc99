#include "wm3d/embed.hpp"

#include <cmath>
#include <limits>

#include "wm3d/error.hpp"

namespace wm3d {

SubbandRect watermark_rect(int frame_width, int frame_height, int wm_width, int wm_height, Band band,
                           int row0, int col0) {
    const SubbandRect sub = subband_rect(frame_width, frame_height, band, kSpatialLevels);
    if (row0 < 0 || col0 < 0 || wm_width < 1 || wm_height < 1 || row0 + wm_height > sub.rows ||
        col0 + wm_width > sub.cols) {
        throw GeometryError("watermark " + std::to_string(wm_width) + "x" + std::to_string(wm_height) +
                            " at offset (" + std::to_string(row0) + "," + std::to_string(col0) +
                            ") does not fit the " + std::string(band_name(band)) + "3 subband of " +
                            std::to_string(sub.cols) + "x" + std::to_string(sub.rows) + " coefficients (frame " +
                            std::to_string(frame_width) + "x" + std::to_string(frame_height) + ")");
    }
    return {sub.row0 + row0, sub.col0 + col0, wm_height, wm_width};
}

double neighbor_max(const CoeffFrame& frame, const SubbandRect& rect, int row, int col) {
    double t = -std::numeric_limits<double>::infinity();
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
            if ((dr != 0 || dc != 0) && rect.contains(row + dr, col + dc)) {
                t = std::max(t, frame.at(row + dr, col + dc));
            }
        }
    }
    return t;
}

int spread_sign(double t, double r, int wd) {
    if ((t > r && wd == 1) || (t < r && wd == -1)) {
        return 1;
    }
    return -1;
}

PlaneEmbedding embed_plane(const CoeffFrame& frame, const SignPlane& wd, const SubbandRect& subband,
                           const SubbandRect& wm_rect, double alpha) {
    if (frame.spatial_levels != kSpatialLevels) {
        throw GeometryError("embedding needs a 3-level spatially transformed frame");
    }
    if (wd.width != wm_rect.cols || wd.height != wm_rect.rows || wm_rect.row0 < subband.row0 ||
        wm_rect.col0 < subband.col0 || wm_rect.row0 + wm_rect.rows > subband.row0 + subband.rows ||
        wm_rect.col0 + wm_rect.cols > subband.col0 + subband.cols) {
        throw GeometryError("watermark rectangle does not fit the subband");
    }
    PlaneEmbedding out{frame, SignPlane{wd.width, wd.height, wd.plane_index, {}}};
    out.realized.signs.resize(wd.signs.size());
    // Reads come from `frame`, writes go to `out.frame`.
    for (int r = 0; r < wm_rect.rows; ++r) {
        for (int c = 0; c < wm_rect.cols; ++c) {
            const int fr = wm_rect.row0 + r;
            const int fc = wm_rect.col0 + c;
            const double coeff = frame.at(fr, fc);
            const double t = neighbor_max(frame, subband, fr, fc);
            const int w = spread_sign(t, coeff, wd.at(r, c));
            out.realized.signs[static_cast<std::size_t>(r) * wd.width + c] = static_cast<std::int8_t>(w);
            out.frame.at(fr, fc) = coeff + alpha * w * coeff;
        }
    }
    return out;
}

std::uint8_t quantize_sample(double v) {
    const double r = std::round(v);
    if (r <= 0.0) {
        return 0;
    }
    if (r >= 255.0) {
        return 255;
    }
    return static_cast<std::uint8_t>(r);
}

ShotEmbedding embed_shot(std::span<const LumaFrame> frames, const SignPlanes& wd, const EmbedParams& params) {
    if (static_cast<int>(frames.size()) < kMinShotLength) {
        throw GeometryError("shot of " + std::to_string(frames.size()) + " frames is too short to embed (need " +
                            std::to_string(kMinShotLength) + ")");
    }
    const int w = frames[0].width;
    const int h = frames[0].height;
    const SubbandRect sub = subband_rect(w, h, params.band, kSpatialLevels);
    const SubbandRect rect =
        watermark_rect(w, h, wd[0].width, wd[0].height, params.band, params.region_row0, params.region_col0);

    CoeffVolume vol = temporal_forward(frames);
    ShotEmbedding out;
    for (int b = 0; b < kBitplanes; ++b) {
        auto& coeff = vol.frames[static_cast<std::size_t>(b) + 1];
        auto embedded = embed_plane(spatial_forward3(coeff), wd[b], sub, rect, params.alpha);
        coeff = spatial_inverse3(embedded.frame);
        out.realized[b] = std::move(embedded.realized);
    }
    const auto synth = temporal_inverse(vol);
    out.frames.reserve(synth.size());
    for (const auto& f : synth) {
        LumaFrame q(w, h);
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            q.samples[i] = quantize_sample(f.values[i]);
        }
        out.frames.push_back(std::move(q));
    }
    return out;
}

}  // namespace wm3d
