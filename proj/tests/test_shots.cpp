#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "support/corpus.hpp"
#include "wm3d/error.hpp"
#include "wm3d/shots.hpp"
#include "wm3d/splitmix.hpp"

using namespace wm3d;

namespace {

// Independent brute-force D(k): per-bin counts by scanning all samples for each bin.
double brute_distance(const LumaFrame& a, const LumaFrame& b) {
    double l1 = 0;
    for (int bin = 0; bin < 64; ++bin) {
        long ca = 0;
        long cb = 0;
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
            ca += a.samples[i] / 4 == bin;
            cb += b.samples[i] / 4 == bin;
        }
        l1 += std::labs(ca - cb);
    }
    return l1 / (2.0 * static_cast<double>(a.samples.size()));
}

VideoClip constant_clip(const std::vector<int>& values, int w = 8, int h = 8) {
    VideoClip clip;
    for (int v : values) {
        clip.frames.emplace_back(w, h, static_cast<std::uint8_t>(v));
    }
    return clip;
}

}  // namespace

TEST_CASE("identical frames form one shot") {
    const auto clip = constant_clip(std::vector<int>(12, 77));
    CHECK(detect_shots(clip).boundaries == std::vector<int>{0, 12});
}

TEST_CASE("black-to-white cut is detected") {
    std::vector<int> values(10, 0);
    values.resize(20, 255);
    const auto clip = constant_clip(values);
    CHECK(histogram_distance(clip.frames[9], clip.frames[10]) == doctest::Approx(1.0));
    CHECK(detect_shots(clip).boundaries == std::vector<int>{0, 10, 20});
}

TEST_CASE("a slow textured fade stays a single shot") {
    const LumaFrame texture = testing::random_frame(4, 32, 32);
    VideoClip clip;
    for (int t = 0; t < 40; ++t) {
        LumaFrame f = texture;
        for (auto& s : f.samples) {
            s = static_cast<std::uint8_t>(s / 2 + 40 + t);
        }
        clip.frames.push_back(f);
    }
    double worst = 0;
    for (std::size_t k = 1; k < clip.frames.size(); ++k) {
        const double d = brute_distance(clip.frames[k - 1], clip.frames[k]);
        CHECK(histogram_distance(clip.frames[k - 1], clip.frames[k]) == doctest::Approx(d).epsilon(1e-12));
        worst = std::max(worst, d);
    }
    REQUIRE(worst < kDefaultShotThreshold);
    CHECK(detect_shots(clip).boundaries == std::vector<int>{0, 40});
}

TEST_CASE("shots partition the clip and ignore chroma") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SplitMix64 rng(seed);
        VideoClip clip;
        for (int i = 0; i < 30; ++i) {
            clip.frames.push_back(rng.next() % 4 == 0 ? testing::random_frame(rng.next(), 16, 16)
                                                      : LumaFrame(16, 16, static_cast<std::uint8_t>(rng.next())));
        }
        const auto shots = detect_shots(clip, 0.5);
        shots.validate();
        CHECK(shots.frame_count() == 30);

        VideoClip with_chroma = clip;
        for (std::size_t i = 0; i < clip.frame_count(); ++i) {
            with_chroma.chroma.emplace_back(128, static_cast<std::uint8_t>(rng.next()));
        }
        CHECK(detect_shots(with_chroma, 0.5) == shots);
    }
}

TEST_CASE("select_shots") {
    ShotBoundaryList shots{{0, 20, 25, 40, 60, 80}};

    SUBCASE("fraction 1 takes every eligible shot") {
        for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
            CHECK(select_shots(shots, seed, 1.0, 9).selected == std::vector<int>{0, 2, 3, 4});
        }
    }
    SUBCASE("single shot survives fraction 0.5") {
        CHECK(select_shots(ShotBoundaryList{{0, 16}}, 7, 0.5, 9).selected == std::vector<int>{0});
    }
    SUBCASE("deterministic and keyed") {
        const auto a = select_shots(shots, 1234, 0.5, 9);
        CHECK(a.selected.size() == 2);
        CHECK(select_shots(shots, 1234, 0.5, 9) == a);
        bool differs = false;
        for (std::uint64_t seed = 0; seed < 32; ++seed) {
            differs |= select_shots(shots, seed, 0.5, 9) != a;
        }
        CHECK(differs);
    }
    SUBCASE("no eligible shot") {
        CHECK_THROWS_AS((select_shots(ShotBoundaryList{{0, 4, 8}}, 1, 1.0, 9)), GeometryError);
    }
    SUBCASE("bad fraction") {
        CHECK_THROWS_AS(select_shots(shots, 1, 0.0, 9), UsageError);
        CHECK_THROWS_AS(select_shots(shots, 1, 1.5, 9), UsageError);
    }
}

TEST_CASE("parse_shot_ranges") {
    CHECK(parse_shot_ranges("0:16,16:40", 40).boundaries == std::vector<int>{0, 16, 40});
    CHECK_THROWS_AS(parse_shot_ranges("0:16,20:40", 40), UsageError);
    CHECK_THROWS_AS(parse_shot_ranges("0:16", 40), UsageError);
    CHECK_THROWS_AS(parse_shot_ranges("0-16", 16), UsageError);
    CHECK_THROWS_AS(parse_shot_ranges("4:2", 4), UsageError);
}

TEST_CASE("ShotBoundaryList validation") {
    CHECK_NOTHROW((ShotBoundaryList{{0, 1}}.validate()));
    CHECK_THROWS_AS((ShotBoundaryList{{1, 4}}.validate()), FormatError);
    CHECK_THROWS_AS((ShotBoundaryList{{0, 4, 4}}.validate()), FormatError);
    CHECK_THROWS_AS((ShotBoundaryList{{0}}.validate()), FormatError);
}
