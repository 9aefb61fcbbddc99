#include "wm3d/attacks.hpp"

#include <cmath>
#include <numbers>

#include "wm3d/embed.hpp"
#include "wm3d/error.hpp"
#include "wm3d/splitmix.hpp"

namespace wm3d {

namespace {

constexpr std::array<int, 64> kLumaTable = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99,
};

// basis[u][x] = c(u) cos((2x+1) u pi / 16), orthonormal 8-point DCT-II.
std::array<std::array<double, 8>, 8> dct_basis() {
    std::array<std::array<double, 8>, 8> b{};
    for (int u = 0; u < 8; ++u) {
        const double cu = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
        for (int x = 0; x < 8; ++x) {
            b[u][x] = cu * std::cos((2.0 * x + 1.0) * u * std::numbers::pi / 16.0);
        }
    }
    return b;
}

void require_same_shape(const VideoClip& a, const VideoClip& b) {
    a.validate();
    b.validate();
    if (a.frame_count() != b.frame_count() || a.width() != b.width() || a.height() != b.height()) {
        throw GeometryError("attack: clips differ in frame count or dimensions");
    }
}

}  // namespace

AttackKind parse_attack_kind(const std::string& name) {
    if (name == "drop") return AttackKind::Drop;
    if (name == "average") return AttackKind::Average;
    if (name == "swap") return AttackKind::Swap;
    if (name == "compress") return AttackKind::Compress;
    if (name == "noise") return AttackKind::Noise;
    throw UsageError("unknown attack '" + name + "'");
}

std::string attack_name(AttackKind kind) {
    switch (kind) {
    case AttackKind::Drop: return "drop";
    case AttackKind::Average: return "average";
    case AttackKind::Swap: return "swap";
    case AttackKind::Compress: return "compress";
    case AttackKind::Noise: return "noise";
    }
    return "?";
}

VideoClip attack_drop(const VideoClip& watermarked, const VideoClip& original) {
    require_same_shape(watermarked, original);
    VideoClip out = watermarked;
    for (std::size_t k = 0; k < out.frame_count(); k += 2) {
        out.frames[k] = original.frames[k];
    }
    return out;
}

VideoClip attack_average(const VideoClip& clip) {
    clip.validate();
    if (clip.frame_count() < 3) {
        throw GeometryError("frame averaging needs at least 3 frames");
    }
    VideoClip out = clip;
    for (std::size_t k = 1; k + 1 < clip.frame_count(); ++k) {
        const auto& prev = clip.frames[k - 1].samples;
        const auto& cur = clip.frames[k].samples;
        const auto& next = clip.frames[k + 1].samples;
        auto& dst = out.frames[k].samples;
        for (std::size_t i = 0; i < dst.size(); ++i) {
            // Sums are integers, so sum/3 is never exactly .5 and +1 rounds to nearest.
            dst[i] = static_cast<std::uint8_t>((prev[i] + cur[i] + next[i] + 1) / 3);
        }
    }
    return out;
}

VideoClip attack_swap(const VideoClip& clip) {
    clip.validate();
    if (clip.frame_count() < 2) {
        throw GeometryError("frame swapping needs at least 2 frames");
    }
    VideoClip out = clip;
    for (std::size_t k = 1; k < out.frame_count(); k += 2) {
        out.frames[k] = out.frames[k - 1];
    }
    return out;
}

std::array<int, 64> quantization_table(int quality) {
    if (quality < 1 || quality > 100) {
        throw UsageError("compression quality must lie in [1, 100]");
    }
    const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    std::array<int, 64> table{};
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double entry = std::round(kLumaTable[i] * scale / 100.0);
        table[i] = std::max(1, static_cast<int>(entry));
    }
    return table;
}

LumaFrame compress_frame(const LumaFrame& frame, int quality) {
    const auto table = quantization_table(quality);
    if (frame.width % 8 != 0 || frame.height % 8 != 0) {
        throw GeometryError("compression proxy needs frame dimensions divisible by 8");
    }
    static const auto basis = dct_basis();
    LumaFrame out = frame;
    double block[8][8];
    double tmp[8][8];
    for (int by = 0; by < frame.height; by += 8) {
        for (int bx = 0; bx < frame.width; bx += 8) {
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    block[y][x] = frame.at(by + y, bx + x) - 128.0;
                }
            }
            // Forward: rows then columns.
            for (int y = 0; y < 8; ++y) {
                for (int u = 0; u < 8; ++u) {
                    double s = 0.0;
                    for (int x = 0; x < 8; ++x) s += basis[u][x] * block[y][x];
                    tmp[y][u] = s;
                }
            }
            for (int u = 0; u < 8; ++u) {
                for (int v = 0; v < 8; ++v) {
                    double s = 0.0;
                    for (int y = 0; y < 8; ++y) s += basis[v][y] * tmp[y][u];
                    const int q = table[static_cast<std::size_t>(v) * 8 + u];
                    block[v][u] = std::round(s / q) * q;
                }
            }
            // Inverse.
            for (int u = 0; u < 8; ++u) {
                for (int y = 0; y < 8; ++y) {
                    double s = 0.0;
                    for (int v = 0; v < 8; ++v) s += basis[v][y] * block[v][u];
                    tmp[y][u] = s;
                }
            }
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    double s = 0.0;
                    for (int u = 0; u < 8; ++u) s += basis[u][x] * tmp[y][u];
                    out.at(by + y, bx + x) = quantize_sample(s + 128.0);
                }
            }
        }
    }
    return out;
}

VideoClip attack_compress(const VideoClip& clip, int quality) {
    clip.validate();
    quantization_table(quality);
    VideoClip out = clip;
    for (auto& f : out.frames) {
        f = compress_frame(f, quality);
    }
    return out;
}

VideoClip attack_noise(const VideoClip& clip, double sigma, std::uint64_t seed) {
    clip.validate();
    if (!(sigma >= 0.0)) {
        throw UsageError("noise sigma must be >= 0");
    }
    VideoClip out = clip;
    if (sigma == 0.0) {
        return out;
    }
    SplitMix64 rng(seed);
    for (auto& f : out.frames) {
        for (std::size_t i = 0; i < f.samples.size(); i += 2) {
            const double u1 = 1.0 - rng.next_unit();  // (0, 1]
            const double u2 = rng.next_unit();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double theta = 2.0 * std::numbers::pi * u2;
            f.samples[i] = quantize_sample(f.samples[i] + sigma * radius * std::cos(theta));
            if (i + 1 < f.samples.size()) {
                f.samples[i + 1] = quantize_sample(f.samples[i + 1] + sigma * radius * std::sin(theta));
            }
        }
    }
    return out;
}

VideoClip apply_attack(const VideoClip& clip, const AttackSpec& spec, const VideoClip* original) {
    switch (spec.kind) {
    case AttackKind::Drop:
        if (original == nullptr) {
            throw UsageError("the drop attack needs the original clip");
        }
        return attack_drop(clip, *original);
    case AttackKind::Average: return attack_average(clip);
    case AttackKind::Swap: return attack_swap(clip);
    case AttackKind::Compress: return attack_compress(clip, spec.quality);
    case AttackKind::Noise: return attack_noise(clip, spec.sigma, spec.seed);
    }
    throw UsageError("unknown attack");
}

}  // namespace wm3d
