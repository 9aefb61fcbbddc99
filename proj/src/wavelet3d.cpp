#include "wm3d/wavelet3d.hpp"

#include <cmath>

#include "wm3d/error.hpp"

namespace wm3d {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// One analysis step on the first n entries: [a_0..a_{n/2-1}, d_0..d_{n/2-1}].
void haar_step(std::span<double> x, std::span<double> tmp, std::size_t n) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const double e = x[2 * i];
        const double o = x[2 * i + 1];
        tmp[i] = (e + o) * kInvSqrt2;
        tmp[half + i] = (e - o) * kInvSqrt2;
    }
    std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(n), x.begin());
}

void haar_unstep(std::span<double> x, std::span<double> tmp, std::size_t n) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const double a = x[i];
        const double d = x[half + i];
        tmp[2 * i] = (a + d) * kInvSqrt2;
        tmp[2 * i + 1] = (a - d) * kInvSqrt2;
    }
    std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(n), x.begin());
}

}  // namespace

CoeffFrame::CoeffFrame(int w, int h, double fill)
    : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

CoeffFrame CoeffFrame::from_luma(const LumaFrame& frame) {
    CoeffFrame out(frame.width, frame.height);
    std::copy(frame.samples.begin(), frame.samples.end(), out.values.begin());
    return out;
}

std::string_view band_name(Band band) {
    switch (band) {
    case Band::LL: return "LL";
    case Band::HL: return "HL";
    case Band::LH: return "LH";
    case Band::HH: return "HH";
    }
    return "?";
}

SubbandRect subband_rect(int width, int height, Band band, int level) {
    if (level < 1 || level > kSpatialLevels) {
        throw GeometryError("subband level must be 1.." + std::to_string(kSpatialLevels));
    }
    const int scale = 1 << level;
    if (width <= 0 || height <= 0 || width % scale != 0 || height % scale != 0) {
        throw GeometryError("frame " + std::to_string(width) + "x" + std::to_string(height) +
                            " is not divisible by " + std::to_string(scale));
    }
    const int rows = height / scale;
    const int cols = width / scale;
    switch (band) {
    case Band::LL: return {0, 0, rows, cols};
    case Band::HL: return {0, cols, rows, cols};
    case Band::LH: return {rows, 0, rows, cols};
    case Band::HH: return {rows, cols, rows, cols};
    }
    throw GeometryError("unknown band");
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

void haar_forward_1d(std::span<double> signal, std::span<double> scratch) {
    for (std::size_t n = signal.size(); n > 1; n /= 2) {
        haar_step(signal, scratch, n);
    }
}

void haar_inverse_1d(std::span<double> signal, std::span<double> scratch) {
    for (std::size_t n = 2; n <= signal.size(); n *= 2) {
        haar_unstep(signal, scratch, n);
    }
}

CoeffVolume temporal_forward(std::span<const CoeffFrame> frames) {
    if (frames.empty()) {
        throw GeometryError("temporal transform needs at least one frame");
    }
    const int w = frames[0].width;
    const int h = frames[0].height;
    for (const auto& f : frames) {
        if (f.width != w || f.height != h) {
            throw GeometryError("dimension mismatch across shot frames");
        }
    }
    CoeffVolume vol;
    vol.original_length = static_cast<int>(frames.size());
    vol.padded_length = next_pow2(vol.original_length);
    vol.temporal_levels = static_cast<int>(std::lround(std::log2(vol.padded_length)));

    const auto np = static_cast<std::size_t>(vol.padded_length);
    vol.frames.assign(np, CoeffFrame(w, h));
    std::vector<double> series(np);
    std::vector<double> scratch(np);
    const std::size_t pixels = static_cast<std::size_t>(w) * h;
    for (std::size_t p = 0; p < pixels; ++p) {
        for (std::size_t t = 0; t < np; ++t) {
            series[t] = frames[std::min(t, frames.size() - 1)].values[p];
        }
        haar_forward_1d(series, scratch);
        for (std::size_t t = 0; t < np; ++t) {
            vol.frames[t].values[p] = series[t];
        }
    }
    return vol;
}

CoeffVolume temporal_forward(std::span<const LumaFrame> frames) {
    std::vector<CoeffFrame> real;
    real.reserve(frames.size());
    for (const auto& f : frames) {
        real.push_back(CoeffFrame::from_luma(f));
    }
    return temporal_forward(std::span<const CoeffFrame>(real));
}

std::vector<CoeffFrame> temporal_inverse(const CoeffVolume& volume) {
    const auto np = static_cast<std::size_t>(volume.padded_length);
    if (volume.frames.size() != np || np == 0 || volume.original_length < 1 ||
        volume.original_length > volume.padded_length) {
        throw GeometryError("malformed coefficient volume");
    }
    const int w = volume.frames[0].width;
    const int h = volume.frames[0].height;
    const auto n = static_cast<std::size_t>(volume.original_length);
    std::vector<CoeffFrame> out(n, CoeffFrame(w, h));
    std::vector<double> series(np);
    std::vector<double> scratch(np);
    const std::size_t pixels = static_cast<std::size_t>(w) * h;
    for (std::size_t p = 0; p < pixels; ++p) {
        for (std::size_t t = 0; t < np; ++t) {
            series[t] = volume.frames[t].values[p];
        }
        haar_inverse_1d(series, scratch);
        for (std::size_t t = 0; t < n; ++t) {
            out[t].values[p] = series[t];
        }
    }
    return out;
}

CoeffFrame spatial_forward3(const CoeffFrame& frame) {
    if (frame.spatial_levels != 0) {
        throw GeometryError("frame already spatially transformed");
    }
    constexpr int scale = 1 << kSpatialLevels;
    if (frame.width % scale != 0 || frame.height % scale != 0) {
        throw GeometryError("frame " + std::to_string(frame.width) + "x" + std::to_string(frame.height) +
                            " is not divisible by 8");
    }
    CoeffFrame out = frame;
    std::vector<double> line(static_cast<std::size_t>(std::max(frame.width, frame.height)));
    std::vector<double> tmp(line.size());
    int w = frame.width;
    int h = frame.height;
    for (int level = 0; level < kSpatialLevels; ++level) {
        for (int r = 0; r < h; ++r) {
            std::span<double> row(&out.at(r, 0), static_cast<std::size_t>(w));
            haar_step(row, tmp, row.size());
        }
        for (int c = 0; c < w; ++c) {
            for (int r = 0; r < h; ++r) {
                line[r] = out.at(r, c);
            }
            haar_step(line, tmp, static_cast<std::size_t>(h));
            for (int r = 0; r < h; ++r) {
                out.at(r, c) = line[r];
            }
        }
        w /= 2;
        h /= 2;
    }
    out.spatial_levels = kSpatialLevels;
    return out;
}

CoeffFrame spatial_inverse3(const CoeffFrame& frame) {
    if (frame.spatial_levels != kSpatialLevels) {
        throw GeometryError("frame is not a 3-level spatial transform");
    }
    CoeffFrame out = frame;
    std::vector<double> line(static_cast<std::size_t>(std::max(frame.width, frame.height)));
    std::vector<double> tmp(line.size());
    for (int level = kSpatialLevels - 1; level >= 0; --level) {
        const int w = frame.width >> level;
        const int h = frame.height >> level;
        for (int c = 0; c < w; ++c) {
            for (int r = 0; r < h; ++r) {
                line[r] = out.at(r, c);
            }
            haar_unstep(line, tmp, static_cast<std::size_t>(h));
            for (int r = 0; r < h; ++r) {
                out.at(r, c) = line[r];
            }
        }
        for (int r = 0; r < h; ++r) {
            std::span<double> row(&out.at(r, 0), static_cast<std::size_t>(w));
            haar_unstep(row, tmp, row.size());
        }
    }
    out.spatial_levels = 0;
    return out;
}

}  // namespace wm3d
