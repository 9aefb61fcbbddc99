#include "wm3d/key_bundle.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wm3d/error.hpp"

namespace wm3d {

namespace {

constexpr std::string_view kMagic = "WM3DKEY";
constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(values[i]);
    }
    return out;
}

template <typename T>
T parse_number(std::string_view text, std::string_view field) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw FormatError("key file: bad value for " + std::string(field) + ": '" + std::string(text) + "'");
    }
    return value;
}

std::vector<int> parse_int_list(std::string_view text, std::string_view field) {
    std::vector<int> out;
    if (text.empty()) {
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        out.push_back(parse_number<int>(text.substr(pos, comma - pos), field));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

std::string format_alpha(double alpha) {
    // %.17g round-trips every finite double.
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", alpha);
    return buf;
}

double parse_alpha(std::string_view text) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw FormatError("key file: bad value for alpha: '" + s + "'");
    }
    return v;
}

// Line reader that yields "key=value" pairs and checks the expected key.
class FieldReader {
public:
    explicit FieldReader(std::istream& in) : in_(in) {}

    std::string expect(std::string_view key) {
        std::string line;
        if (!std::getline(in_, line)) {
            throw FormatError("key file: missing field '" + std::string(key) + "'");
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || std::string_view(line).substr(0, eq) != key) {
            throw FormatError("key file: expected field '" + std::string(key) + "', got '" + line + "'");
        }
        return line.substr(eq + 1);
    }

private:
    std::istream& in_;
};

}  // namespace

Band parse_band(std::string_view name) {
    std::string upper;
    for (char c : name) {
        upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (upper == "LL3") return Band::LL;
    if (upper == "HL3") return Band::HL;
    if (upper == "LH3") return Band::LH;
    if (upper == "HH3") return Band::HH;
    throw FormatError("unknown band '" + std::string(name) + "' (expected LL3, HL3, LH3 or HH3)");
}

std::string format_band(Band band) { return std::string(band_name(band)) + "3"; }

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < bytes.size(); i += 3) {
        const std::size_t n = std::min<std::size_t>(3, bytes.size() - i);
        std::uint32_t chunk = static_cast<std::uint32_t>(bytes[i]) << 16;
        if (n > 1) chunk |= static_cast<std::uint32_t>(bytes[i + 1]) << 8;
        if (n > 2) chunk |= bytes[i + 2];
        out += kAlphabet[(chunk >> 18) & 63];
        out += kAlphabet[(chunk >> 12) & 63];
        out += n > 1 ? kAlphabet[(chunk >> 6) & 63] : '=';
        out += n > 2 ? kAlphabet[chunk & 63] : '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    if (text.size() % 4 != 0) {
        throw FormatError("corrupt base64: length not a multiple of 4");
    }
    std::array<int, 256> lookup;
    lookup.fill(-1);
    for (int i = 0; i < 64; ++i) {
        lookup[static_cast<unsigned char>(kAlphabet[i])] = i;
    }
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        const bool last = i + 4 == text.size();
        int pad = 0;
        std::uint32_t chunk = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const char c = text[i + k];
            if (c == '=') {
                if (!last || k < 2) {
                    throw FormatError("corrupt base64: misplaced padding");
                }
                ++pad;
                chunk <<= 6;
                continue;
            }
            const int v = lookup[static_cast<unsigned char>(c)];
            if (v < 0 || pad > 0) {
                throw FormatError("corrupt base64: invalid character");
            }
            chunk = (chunk << 6) | static_cast<std::uint32_t>(v);
        }
        out.push_back(static_cast<std::uint8_t>(chunk >> 16));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>(chunk >> 8));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(chunk));
    }
    return out;
}

std::vector<std::uint8_t> pack_signs(const SignPlane& plane) {
    std::vector<std::uint8_t> out((plane.signs.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < plane.signs.size(); ++i) {
        if (plane.signs[i] > 0) {
            out[i / 8] = static_cast<std::uint8_t>(out[i / 8] | (0x80U >> (i % 8)));
        }
    }
    return out;
}

SignPlane unpack_signs(std::span<const std::uint8_t> bytes, int width, int height, int plane_index) {
    const auto count = static_cast<std::size_t>(width) * height;
    if (bytes.size() != (count + 7) / 8) {
        throw FormatError("packed sign plane has " + std::to_string(bytes.size()) + " bytes, expected " +
                          std::to_string((count + 7) / 8));
    }
    SignPlane out{width, height, plane_index, std::vector<std::int8_t>(count)};
    for (std::size_t i = 0; i < count; ++i) {
        out.signs[i] = (bytes[i / 8] & (0x80U >> (i % 8))) ? 1 : -1;
    }
    return out;
}

void KeyBundle::validate() const {
    if (version != kVersion) {
        throw FormatError("unknown key version " + std::to_string(version));
    }
    if (wm_width < 1 || wm_height < 1 || row0 < 0 || col0 < 0) {
        throw GeometryError("key bundle: invalid watermark geometry");
    }
    try {
        shots.validate();
    } catch (const FormatError& e) {
        throw GeometryError(std::string("key bundle: ") + e.what());
    }
    if (selection.selected.empty() || selection.selected.size() != records.size()) {
        throw GeometryError("key bundle: selected shots and shot records disagree");
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        const int s = selection.selected[i];
        if (s < 0 || static_cast<std::size_t>(s) >= shots.shot_count() || records[i].shot_index != s ||
            (i > 0 && s <= selection.selected[i - 1])) {
            throw GeometryError("key bundle: selected shot indices inconsistent with shot boundaries");
        }
        for (int b = 0; b < kBitplanes; ++b) {
            const auto& p = records[i].realized[b];
            if (p.width != wm_width || p.height != wm_height || p.plane_index != b ||
                p.signs.size() != static_cast<std::size_t>(wm_width) * wm_height) {
                throw GeometryError("key bundle: sign plane geometry mismatch");
            }
        }
    }
}

void write_key(const KeyBundle& bundle, std::ostream& out) {
    bundle.validate();
    out << kMagic << ' ' << bundle.version << '\n';
    out << "seed1=" << bundle.seed1 << '\n';
    out << "seed2=" << bundle.seed2 << '\n';
    out << "seed3=" << bundle.seed3 << '\n';
    out << "alpha=" << format_alpha(bundle.alpha) << '\n';
    out << "wm_w=" << bundle.wm_width << '\n';
    out << "wm_h=" << bundle.wm_height << '\n';
    out << "band=" << format_band(bundle.band) << '\n';
    out << "row0=" << bundle.row0 << '\n';
    out << "col0=" << bundle.col0 << '\n';
    out << "boundaries=" << join_ints(bundle.shots.boundaries) << '\n';
    out << "selected=" << join_ints(bundle.selection.selected) << '\n';
    for (const auto& rec : bundle.records) {
        out << "shot=" << rec.shot_index << '\n';
        for (int b = 0; b < kBitplanes; ++b) {
            out << "plane" << b << '=' << base64_encode(pack_signs(rec.realized[b])) << '\n';
        }
    }
    if (!out) {
        throw FormatError("failed writing key file");
    }
}

KeyBundle read_key(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw FormatError("key file: bad magic (empty file)");
    }
    if (!header.empty() && header.back() == '\r') {
        header.pop_back();
    }
    std::istringstream hs(header);
    std::string magic;
    std::string version_text;
    hs >> magic >> version_text;
    if (magic != kMagic) {
        throw FormatError("key file: bad magic");
    }
    KeyBundle b;
    b.version = parse_number<int>(version_text, "version");
    if (b.version != KeyBundle::kVersion) {
        throw FormatError("key file: unknown version " + version_text);
    }

    FieldReader fields(in);
    b.seed1 = parse_number<std::uint64_t>(fields.expect("seed1"), "seed1");
    b.seed2 = parse_number<std::uint64_t>(fields.expect("seed2"), "seed2");
    b.seed3 = parse_number<std::uint64_t>(fields.expect("seed3"), "seed3");
    b.alpha = parse_alpha(fields.expect("alpha"));
    b.wm_width = parse_number<int>(fields.expect("wm_w"), "wm_w");
    b.wm_height = parse_number<int>(fields.expect("wm_h"), "wm_h");
    b.band = parse_band(fields.expect("band"));
    b.row0 = parse_number<int>(fields.expect("row0"), "row0");
    b.col0 = parse_number<int>(fields.expect("col0"), "col0");
    b.shots.boundaries = parse_int_list(fields.expect("boundaries"), "boundaries");
    b.selection.selected = parse_int_list(fields.expect("selected"), "selected");
    if (b.wm_width < 1 || b.wm_height < 1) {
        throw GeometryError("key file: invalid watermark dimensions");
    }

    for (std::size_t s = 0; s < b.selection.selected.size(); ++s) {
        EmbedRecord rec;
        rec.shot_index = parse_number<int>(fields.expect("shot"), "shot");
        for (int p = 0; p < kBitplanes; ++p) {
            const std::string key = "plane" + std::to_string(p);
            const auto bytes = base64_decode(fields.expect(key));
            rec.realized[p] = unpack_signs(bytes, b.wm_width, b.wm_height, p);
        }
        b.records.push_back(std::move(rec));
    }
    std::string trailing;
    while (std::getline(in, trailing)) {
        if (!trailing.empty() && trailing != "\r") {
            throw FormatError("key file: unexpected trailing content '" + trailing + "'");
        }
    }
    b.validate();
    return b;
}

void write_key_file(const KeyBundle& bundle, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot create " + path.string());
    }
    write_key(bundle, out);
}

KeyBundle read_key_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    return read_key(in);
}

}  // namespace wm3d
