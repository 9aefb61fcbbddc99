#include "wm3d/wmprep.hpp"

#include <numeric>

#include "wm3d/error.hpp"
#include "wm3d/splitmix.hpp"

namespace wm3d {

Bitplanes decompose_bitplanes(const WatermarkImage& wm) {
    Bitplanes planes;
    for (int b = 0; b < kBitplanes; ++b) {
        auto& p = planes[b];
        p.width = wm.width;
        p.height = wm.height;
        p.plane_index = b;
        p.bits.resize(wm.samples.size());
        for (std::size_t i = 0; i < wm.samples.size(); ++i) {
            p.bits[i] = static_cast<std::uint8_t>((wm.samples[i] >> b) & 1U);
        }
    }
    return planes;
}

WatermarkImage compose_bitplanes(std::span<const Bitplane> planes) {
    if (planes.size() != kBitplanes) {
        throw FormatError("expected 8 bitplanes, got " + std::to_string(planes.size()));
    }
    std::array<bool, kBitplanes> seen{};
    const int w = planes[0].width;
    const int h = planes[0].height;
    WatermarkImage out(w, h);
    for (const auto& p : planes) {
        if (p.plane_index < 0 || p.plane_index >= kBitplanes || seen[p.plane_index]) {
            throw FormatError("missing or duplicate bitplane index");
        }
        seen[p.plane_index] = true;
        if (p.width != w || p.height != h || p.bits.size() != out.samples.size()) {
            throw FormatError("bitplane dimension mismatch");
        }
        for (std::size_t i = 0; i < p.bits.size(); ++i) {
            out.samples[i] = static_cast<std::uint8_t>(out.samples[i] | ((p.bits[i] & 1U) << p.plane_index));
        }
    }
    return out;
}

std::vector<std::uint32_t> permutation(std::size_t count, std::uint64_t seed) {
    std::vector<std::uint32_t> perm(count);
    std::iota(perm.begin(), perm.end(), 0U);
    SplitMix64 rng(seed);
    for (std::size_t i = count; i-- > 1;) {
        const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

Bitplane permute(const Bitplane& plane, std::uint64_t seed1) {
    const auto perm = permutation(plane.bits.size(), seed1);
    Bitplane out = plane;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.bits[i] = plane.bits[perm[i]];
    }
    return out;
}

Bitplane unpermute(const Bitplane& plane, std::uint64_t seed1) {
    const auto perm = permutation(plane.bits.size(), seed1);
    Bitplane out = plane;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.bits[perm[i]] = plane.bits[i];
    }
    return out;
}

std::uint8_t disorder_mask(std::uint64_t seed2, int plane_index, int row, int col) {
    return static_cast<std::uint8_t>(
        keyed_hash(seed2, {static_cast<std::uint64_t>(plane_index), static_cast<std::uint64_t>(row),
                           static_cast<std::uint64_t>(col)}) &
        1U);
}

SignPlane apply_mask(const Bitplane& plane, std::span<const std::uint8_t> mask) {
    if (mask.size() != plane.bits.size()) {
        throw FormatError("mask size does not match bitplane");
    }
    SignPlane out{plane.width, plane.height, plane.plane_index, std::vector<std::int8_t>(plane.bits.size())};
    for (std::size_t i = 0; i < plane.bits.size(); ++i) {
        out.signs[i] = static_cast<std::int8_t>(2 * ((plane.bits[i] ^ mask[i]) & 1) - 1);
    }
    return out;
}

SignPlane disorder(const Bitplane& plane, std::uint64_t seed2) {
    std::vector<std::uint8_t> mask(plane.bits.size());
    for (int r = 0; r < plane.height; ++r) {
        for (int c = 0; c < plane.width; ++c) {
            mask[static_cast<std::size_t>(r) * plane.width + c] = disorder_mask(seed2, plane.plane_index, r, c);
        }
    }
    return apply_mask(plane, mask);
}

Bitplane undisorder(const SignPlane& plane, std::uint64_t seed2) {
    Bitplane out{plane.width, plane.height, plane.plane_index, {}};
    out.bits.resize(plane.signs.size());
    for (int r = 0; r < plane.height; ++r) {
        for (int c = 0; c < plane.width; ++c) {
            const auto i = static_cast<std::size_t>(r) * plane.width + c;
            const int bit = plane.signs[i] > 0 ? 1 : 0;
            out.bits[i] = static_cast<std::uint8_t>(bit ^ disorder_mask(seed2, plane.plane_index, r, c));
        }
    }
    return out;
}

SignPlanes prepare_watermark(const WatermarkImage& wm, const PrepKeys& keys) {
    const auto planes = decompose_bitplanes(wm);
    SignPlanes out;
    for (int b = 0; b < kBitplanes; ++b) {
        out[b] = disorder(permute(planes[b], keys.seed1), keys.seed2);
    }
    return out;
}

WatermarkImage restore_watermark(const SignPlanes& planes, const PrepKeys& keys) {
    Bitplanes bits;
    for (int b = 0; b < kBitplanes; ++b) {
        bits[b] = unpermute(undisorder(planes[b], keys.seed2), keys.seed1);
    }
    return compose_bitplanes(bits);
}

}  // namespace wm3d
