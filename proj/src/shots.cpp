#include "wm3d/shots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "wm3d/error.hpp"
#include "wm3d/splitmix.hpp"

namespace wm3d {

void ShotBoundaryList::validate() const {
    if (boundaries.size() < 2 || boundaries.front() != 0) {
        throw FormatError("shot boundaries must start at 0 and describe at least one shot");
    }
    for (std::size_t i = 1; i < boundaries.size(); ++i) {
        if (boundaries[i] <= boundaries[i - 1]) {
            throw FormatError("shot boundaries must be strictly increasing");
        }
    }
}

namespace {

std::array<std::int64_t, 64> histogram64(const LumaFrame& f) {
    std::array<std::int64_t, 64> h{};
    for (std::uint8_t v : f.samples) {
        ++h[v >> 2];
    }
    return h;
}

}  // namespace

double histogram_distance(const LumaFrame& a, const LumaFrame& b) {
    if (a.width != b.width || a.height != b.height) {
        throw FormatError("dimension mismatch");
    }
    const auto ha = histogram64(a);
    const auto hb = histogram64(b);
    std::int64_t l1 = 0;
    for (std::size_t i = 0; i < ha.size(); ++i) {
        l1 += std::llabs(ha[i] - hb[i]);
    }
    return static_cast<double>(l1) / (2.0 * static_cast<double>(a.size()));
}

ShotBoundaryList detect_shots(const VideoClip& clip, double threshold) {
    clip.validate();
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw UsageError("shot threshold must lie in (0, 1]");
    }
    ShotBoundaryList out;
    out.boundaries.push_back(0);
    auto prev = histogram64(clip.frames[0]);
    const double norm = 2.0 * static_cast<double>(clip.frames[0].size());
    for (std::size_t k = 1; k < clip.frames.size(); ++k) {
        const auto cur = histogram64(clip.frames[k]);
        std::int64_t l1 = 0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            l1 += std::llabs(cur[i] - prev[i]);
        }
        if (static_cast<double>(l1) / norm > threshold) {
            out.boundaries.push_back(static_cast<int>(k));
        }
        prev = cur;
    }
    out.boundaries.push_back(static_cast<int>(clip.frames.size()));
    return out;
}

ShotBoundaryList parse_shot_ranges(const std::string& spec, int frame_count) {
    ShotBoundaryList out;
    std::istringstream in(spec);
    std::string item;
    int expected = 0;
    out.boundaries.push_back(0);
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw UsageError("shot range '" + item + "' is not of the form a:b");
        }
        int a = 0;
        int b = 0;
        try {
            a = std::stoi(item.substr(0, colon));
            b = std::stoi(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw UsageError("shot range '" + item + "' is not numeric");
        }
        if (a != expected || b <= a) {
            throw UsageError("shot ranges must tile the clip contiguously from frame 0");
        }
        out.boundaries.push_back(b);
        expected = b;
    }
    if (expected != frame_count) {
        throw UsageError("shot ranges end at frame " + std::to_string(expected) + " but the clip has " +
                         std::to_string(frame_count) + " frames");
    }
    return out;
}

ShotSelection select_shots(const ShotBoundaryList& shots, std::uint64_t seed3, double fraction,
                           int min_length) {
    shots.validate();
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw UsageError("selection fraction must lie in (0, 1]");
    }
    struct Ranked {
        std::uint64_t key;
        int index;
    };
    std::vector<Ranked> eligible;
    for (std::size_t i = 0; i < shots.shot_count(); ++i) {
        if (shots.shot_length(i) >= min_length) {
            eligible.push_back({keyed_hash(seed3, {static_cast<std::uint64_t>(i)}), static_cast<int>(i)});
        }
    }
    if (eligible.empty()) {
        throw GeometryError("no shot is long enough to embed (need at least " + std::to_string(min_length) +
                            " frames)");
    }
    std::sort(eligible.begin(), eligible.end(), [](const Ranked& a, const Ranked& b) {
        return a.key != b.key ? a.key < b.key : a.index < b.index;
    });
    const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(eligible.size()) - 1e-9));
    ShotSelection sel;
    for (std::size_t i = 0; i < std::min(count, eligible.size()); ++i) {
        sel.selected.push_back(eligible[i].index);
    }
    std::sort(sel.selected.begin(), sel.selected.end());
    return sel;
}

}  // namespace wm3d
