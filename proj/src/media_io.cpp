#include "wm3d/media_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wm3d/error.hpp"

namespace wm3d {

namespace fs = std::filesystem;

LumaFrame::LumaFrame(int w, int h, std::uint8_t fill)
    : width(w), height(h), samples(static_cast<std::size_t>(w) * h, fill) {
    if (w <= 0 || h <= 0) {
        throw FormatError("frame dimensions must be positive");
    }
}

LumaFrame::LumaFrame(int w, int h, std::vector<std::uint8_t> data)
    : width(w), height(h), samples(std::move(data)) {
    if (w <= 0 || h <= 0) {
        throw FormatError("frame dimensions must be positive");
    }
    if (samples.size() != static_cast<std::size_t>(w) * h) {
        throw FormatError("sample count does not match frame dimensions");
    }
}

void VideoClip::validate() const {
    if (frames.empty()) {
        throw FormatError("video clip has no frames");
    }
    for (const auto& f : frames) {
        if (f.width != width() || f.height != height()) {
            throw FormatError("dimension mismatch across frames");
        }
    }
    if (!chroma.empty() && chroma.size() != frames.size()) {
        throw FormatError("chroma payload count does not match frame count");
    }
}

namespace {

std::size_t chroma_bytes_420(int w, int h) {
    const std::size_t cw = (static_cast<std::size_t>(w) + 1) / 2;
    const std::size_t ch = (static_cast<std::size_t>(h) + 1) / 2;
    return 2 * cw * ch;
}

bool is_420_tag(const std::string& tag) {
    return tag.empty() || tag == "420" || tag == "420jpeg" || tag == "420paldv" || tag == "420mpeg2";
}

int parse_positive(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size() || v <= 0) {
            throw FormatError("");
        }
        return v;
    } catch (const std::exception&) {
        throw FormatError(std::string("malformed header: bad ") + what + " '" + text + "'");
    }
}

}  // namespace

VideoClip read_y4m(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || in.eof()) {
        throw FormatError("malformed header: missing YUV4MPEG2 header line");
    }
    std::istringstream tokens(header);
    std::string magic;
    tokens >> magic;
    if (magic != "YUV4MPEG2") {
        throw FormatError("malformed header: bad magic");
    }

    VideoClip clip;
    int width = 0;
    int height = 0;
    bool saw_chroma = false;
    std::string tok;
    while (tokens >> tok) {
        const char key = tok[0];
        const std::string value = tok.substr(1);
        switch (key) {
        case 'W':
            width = parse_positive(value, "width");
            break;
        case 'H':
            height = parse_positive(value, "height");
            break;
        case 'F': {
            const auto colon = value.find(':');
            if (colon == std::string::npos) {
                throw FormatError("malformed header: bad frame rate '" + value + "'");
            }
            clip.frame_rate.num = parse_positive(value.substr(0, colon), "frame rate");
            clip.frame_rate.den = parse_positive(value.substr(colon + 1), "frame rate");
            break;
        }
        case 'C':
            clip.chroma_tag = value;
            saw_chroma = true;
            clip.extra_header_tokens.push_back(tok);
            break;
        default:
            clip.extra_header_tokens.push_back(tok);
            break;
        }
    }
    if (width == 0 || height == 0) {
        throw FormatError("malformed header: missing W or H");
    }
    const bool mono = saw_chroma && clip.chroma_tag == "mono";
    if (!mono && !is_420_tag(clip.chroma_tag)) {
        throw FormatError("unsupported chroma subsampling 'C" + clip.chroma_tag + "'");
    }

    const std::size_t luma_bytes = static_cast<std::size_t>(width) * height;
    const std::size_t chroma_bytes = mono ? 0 : chroma_bytes_420(width, height);

    std::string marker;
    while (std::getline(in, marker)) {
        if (marker.rfind("FRAME", 0) != 0) {
            throw FormatError("malformed frame marker");
        }
        std::vector<std::uint8_t> luma(luma_bytes);
        in.read(reinterpret_cast<char*>(luma.data()), static_cast<std::streamsize>(luma_bytes));
        if (static_cast<std::size_t>(in.gcount()) != luma_bytes) {
            throw FormatError("truncated frame payload");
        }
        if (chroma_bytes > 0) {
            std::vector<std::uint8_t> uv(chroma_bytes);
            in.read(reinterpret_cast<char*>(uv.data()), static_cast<std::streamsize>(chroma_bytes));
            if (static_cast<std::size_t>(in.gcount()) != chroma_bytes) {
                throw FormatError("truncated frame payload");
            }
            clip.chroma.push_back(std::move(uv));
        }
        clip.frames.emplace_back(width, height, std::move(luma));
    }
    if (clip.frames.empty()) {
        throw FormatError("truncated frame payload: no frames after header");
    }
    return clip;
}

void write_y4m(const VideoClip& clip, std::ostream& out) {
    clip.validate();
    out << "YUV4MPEG2 W" << clip.width() << " H" << clip.height() << " F" << clip.frame_rate.num
        << ':' << clip.frame_rate.den;
    bool wrote_chroma = false;
    for (const auto& tok : clip.extra_header_tokens) {
        if (tok[0] == 'C') {
            // The C token keeps its original position but always reflects chroma_tag.
            if (clip.has_chroma() && !clip.chroma_tag.empty()) {
                out << " C" << clip.chroma_tag;
                wrote_chroma = true;
            }
            continue;
        }
        out << ' ' << tok;
    }
    if (!clip.has_chroma()) {
        out << " Cmono";
    } else if (!wrote_chroma && !clip.chroma_tag.empty()) {
        out << " C" << clip.chroma_tag;
    }
    out << '\n';
    for (std::size_t i = 0; i < clip.frames.size(); ++i) {
        const auto& f = clip.frames[i];
        out << "FRAME\n";
        out.write(reinterpret_cast<const char*>(f.samples.data()), static_cast<std::streamsize>(f.samples.size()));
        if (clip.has_chroma()) {
            const auto& uv = clip.chroma[i];
            out.write(reinterpret_cast<const char*>(uv.data()), static_cast<std::streamsize>(uv.size()));
        }
    }
    if (!out) {
        throw FormatError("failed writing Y4M stream");
    }
}

VideoClip read_y4m_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    return read_y4m(in);
}

void write_y4m_file(const VideoClip& clip, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot create " + path.string());
    }
    write_y4m(clip, out);
}

namespace {

// Reads the next whitespace-delimited PGM header integer, skipping '#' comments.
int read_pgm_int(std::istream& in) {
    int c = in.peek();
    while (c != EOF) {
        if (c == '#') {
            std::string comment;
            std::getline(in, comment);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
        c = in.peek();
    }
    int v = 0;
    if (!(in >> v) || v <= 0) {
        throw FormatError("malformed PGM header");
    }
    return v;
}

}  // namespace

LumaFrame read_pgm(std::istream& in) {
    char magic[2] = {};
    in.read(magic, 2);
    if (in.gcount() != 2 || magic[0] != 'P' || magic[1] != '5') {
        throw FormatError("not a binary PGM (P5) file");
    }
    const int w = read_pgm_int(in);
    const int h = read_pgm_int(in);
    const int maxval = read_pgm_int(in);
    if (maxval != 255) {
        throw FormatError("unsupported PGM maxval " + std::to_string(maxval) + " (expected 255)");
    }
    if (!std::isspace(in.get())) {
        throw FormatError("malformed PGM header");
    }
    std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (static_cast<std::size_t>(in.gcount()) != data.size()) {
        throw FormatError("truncated PGM payload");
    }
    return LumaFrame(w, h, std::move(data));
}

void write_pgm(const LumaFrame& frame, std::ostream& out) {
    out << "P5\n" << frame.width << ' ' << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.samples.data()), static_cast<std::streamsize>(frame.samples.size()));
    if (!out) {
        throw FormatError("failed writing PGM stream");
    }
}

LumaFrame read_pgm_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    return read_pgm(in);
}

void write_pgm_file(const LumaFrame& frame, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot create " + path.string());
    }
    write_pgm(frame, out);
}

VideoClip read_pgm_sequence(std::vector<fs::path> files) {
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    VideoClip clip;
    for (const auto& f : files) {
        clip.frames.push_back(read_pgm_file(f));
    }
    clip.validate();
    return clip;
}

VideoClip read_pgm_directory(const fs::path& directory) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) {
        throw FormatError("no .pgm frames in " + directory.string());
    }
    return read_pgm_sequence(std::move(files));
}

std::vector<fs::path> write_pgm_sequence(const VideoClip& clip, const fs::path& directory,
                                         const std::string& prefix) {
    clip.validate();
    fs::create_directories(directory);
    std::vector<fs::path> written;
    for (std::size_t i = 0; i < clip.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%06zu.pgm", i + 1);
        written.push_back(directory / (prefix + name));
        write_pgm_file(clip.frames[i], written.back());
    }
    return written;
}

VideoClip load_clip(const fs::path& path) {
    if (fs::is_directory(path)) {
        return read_pgm_directory(path);
    }
    return read_y4m_file(path);
}

void save_clip(const VideoClip& clip, const fs::path& path) {
    if (path.extension() == ".y4m") {
        write_y4m_file(clip, path);
    } else {
        write_pgm_sequence(clip, path);
    }
}

}  // namespace wm3d
