#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wm3d {

/// One 8-bit luminance image, row-major.
struct LumaFrame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> samples;

    LumaFrame() = default;
    LumaFrame(int w, int h, std::uint8_t fill = 0);
    LumaFrame(int w, int h, std::vector<std::uint8_t> data);

    std::uint8_t at(int row, int col) const { return samples[static_cast<std::size_t>(row) * width + col]; }
    std::uint8_t& at(int row, int col) { return samples[static_cast<std::size_t>(row) * width + col]; }
    std::size_t size() const { return samples.size(); }

    bool operator==(const LumaFrame&) const = default;
};

struct FrameRate {
    int num = 25;
    int den = 1;
    bool operator==(const FrameRate&) const = default;
};

/// A sequence of equally sized luma frames. Chroma planes read from a Y4M
/// file are kept verbatim (U then V, one payload per frame) so they can be
/// re-emitted untouched; an empty `chroma` means the clip is luma-only.
struct VideoClip {
    std::vector<LumaFrame> frames;
    FrameRate frame_rate;
    std::vector<std::vector<std::uint8_t>> chroma;
    /// Value of the header's C token without the leading 'C' ("420jpeg",
    /// "mono", ...); empty when the source header had none.
    std::string chroma_tag;
    /// Header tokens after W/H/F (interlace, aspect, chroma, X-extensions) in
    /// source order; the C token is re-emitted from chroma_tag.
    std::vector<std::string> extra_header_tokens;

    int width() const { return frames.empty() ? 0 : frames.front().width; }
    int height() const { return frames.empty() ? 0 : frames.front().height; }
    std::size_t frame_count() const { return frames.size(); }
    bool has_chroma() const { return !chroma.empty(); }

    /// Throws FormatError when empty or when frame sizes differ.
    void validate() const;

    bool operator==(const VideoClip&) const = default;
};

VideoClip read_y4m(std::istream& in);
void write_y4m(const VideoClip& clip, std::ostream& out);
VideoClip read_y4m_file(const std::filesystem::path& path);
void write_y4m_file(const VideoClip& clip, const std::filesystem::path& path);

LumaFrame read_pgm(std::istream& in);
void write_pgm(const LumaFrame& frame, std::ostream& out);
LumaFrame read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const LumaFrame& frame, const std::filesystem::path& path);

/// Frames are ordered by lexicographic file name.
VideoClip read_pgm_sequence(std::vector<std::filesystem::path> files);
/// Reads every *.pgm in `directory`.
VideoClip read_pgm_directory(const std::filesystem::path& directory);
/// Writes frame_000001.pgm, frame_000002.pgm, ... (`prefix` replaces "frame_").
/// Returns the written paths.
std::vector<std::filesystem::path> write_pgm_sequence(const VideoClip& clip,
                                                      const std::filesystem::path& directory,
                                                      const std::string& prefix = "frame_");

/// Loads a clip from a .y4m file or a directory of PGM frames.
VideoClip load_clip(const std::filesystem::path& path);
/// Saves to a .y4m file, or to a PGM directory when the path has no .y4m extension.
void save_clip(const VideoClip& clip, const std::filesystem::path& path);

}  // namespace wm3d
