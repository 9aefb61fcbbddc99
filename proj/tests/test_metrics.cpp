#include <doctest.h>

#include <cmath>

#include "support/corpus.hpp"
#include "wm3d/error.hpp"
#include "wm3d/metrics.hpp"
#include "wm3d/splitmix.hpp"

using namespace wm3d;

TEST_CASE("nc basics") {
    const auto w = testing::random_frame(1, 8, 8);
    CHECK(nc(w, w) == doctest::Approx(1.0));
    CHECK(nc(w, LumaFrame(8, 8, 0)) == 0.0);

    LumaFrame even(4, 4);
    LumaFrame half(4, 4);
    for (std::size_t i = 0; i < even.samples.size(); ++i) {
        even.samples[i] = static_cast<std::uint8_t>(2 * (i * 7 % 100) + 2);
        half.samples[i] = static_cast<std::uint8_t>(even.samples[i] / 2);
    }
    CHECK(nc(even, half) == doctest::Approx(0.5));

    // Reference energy normalization lets NC exceed one.
    CHECK(nc(LumaFrame(2, 2, 10), LumaFrame(2, 2, 20)) == doctest::Approx(2.0));

    CHECK_THROWS_AS(nc(LumaFrame(2, 2, 0), w), GeometryError);
    CHECK_THROWS_AS(nc(LumaFrame(8, 8, 0), w), FormatError);
}

TEST_CASE("nc is linear in the extracted image") {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto w = testing::random_frame(rng.next(), 6, 6);
        const auto x = testing::random_frame(rng.next(), 6, 6);
        const auto y = testing::random_frame(rng.next(), 6, 6);
        // aX + bY in real arithmetic with a, b chosen so the sum stays 8-bit.
        LumaFrame sum(6, 6);
        for (std::size_t i = 0; i < sum.samples.size(); ++i) {
            sum.samples[i] = static_cast<std::uint8_t>(x.samples[i] / 2 + y.samples[i] / 2);
        }
        LumaFrame hx(6, 6);
        LumaFrame hy(6, 6);
        for (std::size_t i = 0; i < sum.samples.size(); ++i) {
            hx.samples[i] = static_cast<std::uint8_t>(x.samples[i] / 2);
            hy.samples[i] = static_cast<std::uint8_t>(y.samples[i] / 2);
        }
        CHECK(nc(w, sum) == doctest::Approx(nc(w, hx) + nc(w, hy)).epsilon(1e-12));
    }
}

TEST_CASE("psnr values") {
    const LumaFrame a(8, 8, 100);
    CHECK(std::isinf(psnr(a, a)));
    CHECK(psnr(a, LumaFrame(8, 8, 101)) == doctest::Approx(48.1308).epsilon(1e-5));
    CHECK(psnr(LumaFrame(8, 8, 0), LumaFrame(8, 8, 255)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(psnr(a, LumaFrame(4, 4, 0)), GeometryError);
}

TEST_CASE("psnr is symmetric and decreasing in uniform error") {
    const auto a = testing::random_frame(5, 16, 16);
    const auto b = testing::random_frame(6, 16, 16);
    CHECK(psnr(a, b) == psnr(b, a));

    double prev = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= 255; d += 17) {
        const double p = psnr(LumaFrame(4, 4, 0), LumaFrame(4, 4, static_cast<std::uint8_t>(d)));
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("psnr_clip") {
    VideoClip a;
    a.frames = {testing::random_frame(1, 8, 8), testing::random_frame(2, 8, 8), testing::random_frame(3, 8, 8)};

    const auto same = psnr_clip(a, a);
    CHECK(same.psnr_per_frame.size() == 3);
    for (double p : same.psnr_per_frame) CHECK(std::isinf(p));
    CHECK(std::isinf(same.psnr_mean));

    VideoClip b = a;
    b.frames[1].samples[0] ^= 1;
    const auto one = psnr_clip(a, b);
    CHECK(std::isfinite(one.psnr_per_frame[1]));
    CHECK(std::isinf(one.psnr_per_frame[0]));
    CHECK(std::isinf(one.psnr_per_frame[2]));
    CHECK(one.psnr_mean == one.psnr_per_frame[1]);

    VideoClip c;
    c.frames = {testing::random_frame(7, 8, 8), testing::random_frame(8, 8, 8), testing::random_frame(9, 8, 8)};
    const auto r = psnr_clip(a, c);
    double sum = 0;
    for (int f = 0; f < 3; ++f) {
        long sse = 0;
        for (int i = 0; i < 64; ++i) {
            const long d = long(a.frames[f].samples[i]) - long(c.frames[f].samples[i]);
            sse += d * d;
        }
        const double expect = 10.0 * std::log10(255.0 * 255.0 * 64.0 / static_cast<double>(sse));
        CHECK(r.psnr_per_frame[f] == doctest::Approx(expect).epsilon(1e-12));
        sum += expect;
    }
    CHECK(r.psnr_mean == doctest::Approx(sum / 3).epsilon(1e-12));

    VideoClip shorter = a;
    shorter.frames.pop_back();
    CHECK_THROWS_AS(psnr_clip(a, shorter), GeometryError);
}

TEST_CASE("format_metric") {
    CHECK(format_metric(48.13080360867910) == "48.1308");
    CHECK(format_metric(kInfinitePsnr) == "inf");
    CHECK(format_metric(1.0) == "1.0000");
}
