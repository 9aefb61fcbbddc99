#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wm3d/embed.hpp"
#include "wm3d/shots.hpp"

namespace wm3d {

/// Everything blind extraction needs: the permutation and disorder seeds,
/// the shot-selection seed, geometry, the shot layout used at embed time and
/// the realized W_k planes of every watermarked shot.
struct KeyBundle {
    static constexpr int kVersion = 1;

    int version = kVersion;
    std::uint64_t seed1 = 0;
    std::uint64_t seed2 = 0;
    std::uint64_t seed3 = 0;
    double alpha = 0.1;
    int wm_width = 0;
    int wm_height = 0;
    Band band = Band::LH;
    int row0 = 0;
    int col0 = 0;
    ShotBoundaryList shots;
    ShotSelection selection;
    std::vector<EmbedRecord> records;

    PrepKeys prep_keys() const { return {seed1, seed2}; }
    EmbedParams embed_params() const { return {alpha, band, row0, col0}; }

    /// Throws GeometryError when fields contradict each other.
    void validate() const;

    bool operator==(const KeyBundle&) const = default;
};

/// Parses "LH3"/"lh3" style names (level must be 3).
Band parse_band(std::string_view name);
std::string format_band(Band band);

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws FormatError on characters outside the alphabet or bad padding.
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Row-major, MSB-first within each byte, 1 <-> +1, 0 <-> -1, zero padded.
std::vector<std::uint8_t> pack_signs(const SignPlane& plane);
SignPlane unpack_signs(std::span<const std::uint8_t> bytes, int width, int height, int plane_index);

void write_key(const KeyBundle& bundle, std::ostream& out);
KeyBundle read_key(std::istream& in);
void write_key_file(const KeyBundle& bundle, const std::filesystem::path& path);
KeyBundle read_key_file(const std::filesystem::path& path);

}  // namespace wm3d
