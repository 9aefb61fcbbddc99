#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support/corpus.hpp"
#include "wm3d/error.hpp"
#include "wm3d/splitmix.hpp"
#include "wm3d/wmprep.hpp"

using namespace wm3d;

namespace {

Bitplane random_plane(std::uint64_t seed, int w, int h, int index = 0) {
    SplitMix64 rng(seed);
    Bitplane p{w, h, index, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h)};
    for (auto& b : p.bits) b = static_cast<std::uint8_t>(rng.next() & 1);
    return p;
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
    // First outputs for seed 1234567 from the reference C implementation.
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ULL);
    CHECK(rng.next() == 3203168211198807973ULL);
    CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("decompose_bitplanes") {
    WatermarkImage wm(2, 1, std::vector<std::uint8_t>{170, 0});
    const auto planes = decompose_bitplanes(wm);
    const int expect[8] = {0, 1, 0, 1, 0, 1, 0, 1};  // plane 0 .. plane 7
    for (int b = 0; b < 8; ++b) {
        CHECK(planes[b].plane_index == b);
        CHECK(planes[b].bits[0] == expect[b]);
        CHECK(planes[b].bits[1] == 0);
    }
}

TEST_CASE("compose_bitplanes") {
    Bitplanes planes;
    for (int b = 0; b < 8; ++b) planes[b] = Bitplane{3, 2, b, std::vector<std::uint8_t>(6, 1)};
    CHECK(compose_bitplanes(planes).samples == std::vector<std::uint8_t>(6, 255));

    for (int b = 0; b < 8; ++b) planes[b].bits.assign(6, b == 7 ? 1 : 0);
    CHECK(compose_bitplanes(planes).samples == std::vector<std::uint8_t>(6, 128));

    auto dup = planes;
    dup[3].plane_index = 4;
    CHECK_THROWS_AS(compose_bitplanes(dup), FormatError);
    auto mismatch = planes;
    mismatch[2].width = 2;
    CHECK_THROWS_AS(compose_bitplanes(mismatch), FormatError);
    CHECK_THROWS_AS(compose_bitplanes(std::span<const Bitplane>(planes).first(7)), FormatError);

    // Order of planes in the input does not matter.
    auto shuffled = planes;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(compose_bitplanes(shuffled) == compose_bitplanes(planes));
}

TEST_CASE("bitplane round trip on random images") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto wm = testing::random_frame(seed, 7, 5);
        CHECK(compose_bitplanes(decompose_bitplanes(wm)) == wm);
    }
}

TEST_CASE("permutation is a deterministic bijection") {
    const auto a = permutation(16, 42);
    CHECK(a == permutation(16, 42));
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint32_t> iota(16);
    std::iota(iota.begin(), iota.end(), 0U);
    CHECK(sorted == iota);
    CHECK(a != permutation(16, 43));
    CHECK(permutation(1, 5) == std::vector<std::uint32_t>{0});
    CHECK(permutation(0, 5).empty());
}

TEST_CASE("permutation follows the documented Fisher-Yates schedule") {
    // Hand-unrolled for n = 4.
    SplitMix64 rng(9);
    std::vector<std::uint32_t> p{0, 1, 2, 3};
    for (std::uint64_t i = 3; i >= 1; --i) {
        std::swap(p[i], p[rng.next() % (i + 1)]);
    }
    CHECK(permutation(4, 9) == p);
}

TEST_CASE("permute / unpermute") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = random_plane(seed, 9, 7);
        const auto q = permute(p, seed * 31 + 1);
        CHECK(unpermute(q, seed * 31 + 1) == p);
        CHECK(std::count(q.bits.begin(), q.bits.end(), 1) == std::count(p.bits.begin(), p.bits.end(), 1));
        CHECK(permute(p, seed * 31 + 1) == q);
    }
}

TEST_CASE("disorder with a zero mask maps bits straight to signs") {
    Bitplane p{4, 1, 0, {1, 0, 0, 1}};
    const auto s = apply_mask(p, std::vector<std::uint8_t>(4, 0));
    CHECK(s.signs == std::vector<std::int8_t>{1, -1, -1, 1});
    const auto inv = apply_mask(p, std::vector<std::uint8_t>(4, 1));
    CHECK(inv.signs == std::vector<std::int8_t>{-1, 1, 1, -1});
}

TEST_CASE("disorder / undisorder") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = random_plane(seed + 100, 6, 6, static_cast<int>(seed % 8));
        const auto s = disorder(p, seed);
        for (auto v : s.signs) CHECK((v == 1 || v == -1));
        CHECK(undisorder(s, seed) == p);
    }
    const auto p = random_plane(5, 16, 16);
    CHECK(disorder(p, 1) != disorder(p, 2));

    // Planes get independent masks.
    auto p3 = p;
    p3.plane_index = 3;
    CHECK(disorder(p, 1).signs != disorder(p3, 1).signs);
}

TEST_CASE("disorder output is near balanced") {
    Bitplane zeros{32, 32, 0, std::vector<std::uint8_t>(1024, 0)};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = disorder(zeros, seed);
        const long plus = std::count(s.signs.begin(), s.signs.end(), 1);
        CHECK(std::abs(plus - (1024 - plus)) <= 4 * 32);
    }
}

TEST_CASE("full preparation round trip") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto wm = testing::random_frame(seed, 11, 13);
        const PrepKeys keys{seed * 7 + 3, seed * 13 + 5};
        CHECK(restore_watermark(prepare_watermark(wm, keys), keys) == wm);
    }
}
