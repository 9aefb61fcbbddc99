#include "wm3d/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "wm3d/error.hpp"

namespace wm3d {

double nc(const LumaFrame& reference, const LumaFrame& extracted) {
    if (reference.width != extracted.width || reference.height != extracted.height) {
        throw GeometryError("NC: dimension mismatch");
    }
    double cross = 0.0;
    double energy = 0.0;
    for (std::size_t i = 0; i < reference.samples.size(); ++i) {
        const double w = reference.samples[i];
        cross += w * extracted.samples[i];
        energy += w * w;
    }
    if (energy == 0.0) {
        throw FormatError("NC: reference watermark is all zero");
    }
    return cross / energy;
}

double psnr(const LumaFrame& a, const LumaFrame& b) {
    if (a.width != b.width || a.height != b.height) {
        throw GeometryError("PSNR: dimension mismatch");
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double d = static_cast<double>(a.samples[i]) - static_cast<double>(b.samples[i]);
        sse += d * d;
    }
    if (sse == 0.0) {
        return kInfinitePsnr;
    }
    const double mse = sse / static_cast<double>(a.samples.size());
    return 20.0 * std::log10(255.0 / std::sqrt(mse));
}

MetricsReport psnr_clip(const VideoClip& a, const VideoClip& b) {
    a.validate();
    b.validate();
    if (a.frame_count() != b.frame_count()) {
        throw GeometryError("PSNR: frame count mismatch");
    }
    MetricsReport report;
    double sum = 0.0;
    std::size_t finite = 0;
    for (std::size_t i = 0; i < a.frame_count(); ++i) {
        const double p = psnr(a.frames[i], b.frames[i]);
        report.psnr_per_frame.push_back(p);
        if (std::isfinite(p)) {
            sum += p;
            ++finite;
        }
    }
    report.psnr_mean = finite ? sum / static_cast<double>(finite) : kInfinitePsnr;
    return report;
}

std::string format_metric(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

}  // namespace wm3d
