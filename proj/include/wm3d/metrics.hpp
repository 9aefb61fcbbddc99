#pragma once

#include <limits>
#include <string>
#include <vector>

#include "wm3d/media_io.hpp"

namespace wm3d {

/// Sentinel PSNR for identical frames.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

struct MetricsReport {
    double nc = 0.0;
    std::vector<double> psnr_per_frame;
    /// Mean over finite entries; kInfinitePsnr when every entry is infinite.
    double psnr_mean = kInfinitePsnr;
};

/// sum(W * W') / sum(W^2) over grayscale values. Not clipped to 1.
double nc(const LumaFrame& reference, const LumaFrame& extracted);

/// 20 log10(255 / sqrt(MSE)); kInfinitePsnr when MSE = 0.
double psnr(const LumaFrame& a, const LumaFrame& b);

MetricsReport psnr_clip(const VideoClip& a, const VideoClip& b);

/// Fixed four-decimal rendering; infinite values print as "inf".
std::string format_metric(double value);

}  // namespace wm3d
