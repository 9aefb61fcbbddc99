#include <doctest.h>

#include <sstream>

#include "wm3d/error.hpp"
#include "wm3d/key_bundle.hpp"
#include "wm3d/splitmix.hpp"

using namespace wm3d;

namespace {

KeyBundle random_bundle(std::uint64_t seed) {
    SplitMix64 rng(seed);
    KeyBundle b;
    b.seed1 = rng.next();
    b.seed2 = rng.next();
    b.seed3 = rng.next();
    b.alpha = rng.next_unit() * 0.9;
    b.wm_width = 1 + static_cast<int>(rng.next() % 20);
    b.wm_height = 1 + static_cast<int>(rng.next() % 20);
    b.band = static_cast<Band>(rng.next() % 4);
    b.row0 = static_cast<int>(rng.next() % 5);
    b.col0 = static_cast<int>(rng.next() % 5);
    b.shots.boundaries = {0};
    const int shots = 1 + static_cast<int>(rng.next() % 4);
    for (int s = 0; s < shots; ++s) {
        b.shots.boundaries.push_back(b.shots.boundaries.back() + 1 + static_cast<int>(rng.next() % 40));
    }
    for (int s = 0; s < shots; ++s) {
        if (s == 0 || rng.next() % 2) {
            b.selection.selected.push_back(s);
            EmbedRecord rec;
            rec.shot_index = s;
            for (int p = 0; p < kBitplanes; ++p) {
                auto& sp = rec.realized[p];
                sp.width = b.wm_width;
                sp.height = b.wm_height;
                sp.plane_index = p;
                sp.signs.resize(static_cast<std::size_t>(b.wm_width) * b.wm_height);
                for (auto& v : sp.signs) v = (rng.next() & 1) ? 1 : -1;
            }
            b.records.push_back(rec);
        }
    }
    return b;
}

std::string to_text(const KeyBundle& b) {
    std::ostringstream out;
    write_key(b, out);
    return out.str();
}

KeyBundle from_text(const std::string& text) {
    std::istringstream in(text);
    return read_key(in);
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("base64 reference vectors") {
    auto enc = [](std::string_view s) {
        return base64_encode(std::vector<std::uint8_t>(s.begin(), s.end()));
    };
    CHECK(enc("") == "");
    CHECK(enc("f") == "Zg==");
    CHECK(enc("fo") == "Zm8=");
    CHECK(enc("foo") == "Zm9v");
    CHECK(enc("foobar") == "Zm9vYmFy");
    const auto dec = base64_decode("Zm9vYmE=");
    CHECK(std::string(dec.begin(), dec.end()) == "fooba");
    CHECK_THROWS_AS(base64_decode("Zm9"), FormatError);
    CHECK_THROWS_AS(base64_decode("Zm!v"), FormatError);
    CHECK_THROWS_AS(base64_decode("Z===")  , FormatError);
    CHECK_THROWS_AS(base64_decode("Zg==Zg=="), FormatError);
}

TEST_CASE("sign packing is MSB first with 1 for +1") {
    SignPlane p{3, 3, 0, {1, -1, -1, -1, -1, -1, -1, 1, 1}};
    const auto bytes = pack_signs(p);
    CHECK(bytes == std::vector<std::uint8_t>{0x81, 0x80});
    CHECK(unpack_signs(bytes, 3, 3, 0) == p);
    CHECK_THROWS_AS(unpack_signs(bytes, 5, 5, 0), FormatError);
}

TEST_CASE("minimal bundle layout") {
    KeyBundle b = random_bundle(1);
    b.wm_width = b.wm_height = 16;
    b.shots.boundaries = {0, 64};
    b.selection.selected = {0};
    b.records.resize(1);
    b.records[0].shot_index = 0;
    for (int p = 0; p < kBitplanes; ++p) {
        b.records[0].realized[p] = SignPlane{16, 16, p, std::vector<std::int8_t>(256, 1)};
    }
    b.seed1 = 1;
    b.seed2 = 2;
    b.seed3 = 3;
    b.alpha = 0.1;
    b.band = Band::LH;
    b.row0 = b.col0 = 0;
    const std::string text = to_text(b);
    std::istringstream lines(text);
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) all.push_back(line);
    REQUIRE(all.size() == 12 + 1 + 8);
    CHECK(all[0] == "WM3DKEY 1");
    CHECK(all[1] == "seed1=1");
    CHECK(all[4] == "alpha=0.10000000000000001");
    CHECK(all[7] == "band=LH3");
    CHECK(all[10] == "boundaries=0,64");
    CHECK(all[11] == "selected=0");
    CHECK(all[12] == "shot=0");
    for (int p = 0; p < 8; ++p) {
        const auto& pl = all[13 + p];
        CHECK(pl.rfind("plane" + std::to_string(p) + "=", 0) == 0);
        CHECK(pl.size() - 7 == 44);
    }
    CHECK(from_text(text) == b);
}

TEST_CASE("random bundles round-trip exactly") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto b = random_bundle(seed);
        const auto text = to_text(b);
        const auto back = from_text(text);
        CHECK(back == b);
        CHECK(to_text(back) == text);
    }
}

TEST_CASE("read_key rejects damaged files") {
    const std::string good = to_text(random_bundle(3));
    CHECK_THROWS_WITH_AS(from_text(replace(good, "WM3DKEY", "WM3DKEZ")), doctest::Contains("bad magic"),
                         FormatError);
    CHECK_THROWS_WITH_AS(from_text(""), doctest::Contains("bad magic"), FormatError);
    CHECK_THROWS_WITH_AS(from_text(replace(good, "WM3DKEY 1", "WM3DKEY 2")), doctest::Contains("version"),
                         FormatError);
    CHECK_THROWS_AS(from_text(replace(good, "seed2=", "seedX=")), FormatError);
    CHECK_THROWS_AS(from_text(replace(good, "plane3=", "plane3=#")), FormatError);
    CHECK_THROWS_AS(from_text(good.substr(0, good.size() / 2)), FormatError);
    CHECK_THROWS_AS(from_text(replace(good, "boundaries=0,", "boundaries=5,")), GeometryError);
    CHECK_THROWS_AS(from_text(good + "junk\n"), FormatError);
}

TEST_CASE("validate catches inconsistent bundles") {
    auto b = random_bundle(9);
    CHECK_NOTHROW(b.validate());
    auto bad = b;
    bad.selection.selected[0] = 99;
    CHECK_THROWS_AS(bad.validate(), GeometryError);
    bad = b;
    bad.records[0].realized[2].width += 1;
    CHECK_THROWS_AS(bad.validate(), GeometryError);
    bad = b;
    bad.records.clear();
    bad.selection.selected.clear();
    CHECK_THROWS_AS(bad.validate(), GeometryError);
}

TEST_CASE("band names") {
    CHECK(parse_band("lh3") == Band::LH);
    CHECK(parse_band("HL3") == Band::HL);
    CHECK(format_band(Band::HH) == "HH3");
    CHECK_THROWS_AS(parse_band("LH2"), FormatError);
}
