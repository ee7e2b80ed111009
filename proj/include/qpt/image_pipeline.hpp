#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/conv_schemes.hpp"
#include "qpt/error.hpp"

// Row-wise application of the convolution schemes to grayscale images.
// Rows are treated as independent periodic signals, so row length must be a
// power of two (pad first if it is not); height is unconstrained.

namespace qpt {

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;  // row-major, top-left origin

    GrayImage() = default;
    GrayImage(std::size_t w, std::size_t h, double fill = 0.0)
        : width(w), height(h), pixels(w * h, fill) {}

    double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
    double& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
    std::span<const double> row(std::size_t y) const {
        return {pixels.data() + y * width, width};
    }
    std::span<double> row(std::size_t y) { return {pixels.data() + y * width, width}; }
};

struct DisplayStats {
    double min = 0.0;
    double max = 0.0;
    double absmax = 0.0;
};

namespace detail {

inline void check_image(const GrayImage& img) {
    if (img.width == 0 || img.height == 0) throw invalid_size_error("empty image");
    if (img.pixels.size() != img.width * img.height)
        throw invalid_size_error("pixel buffer does not match the image dimensions");
}

inline void check_row_length(const GrayImage& img) {
    check_image(img);
    if (img.width < 4 || !is_power_of_two(img.width))
        throw invalid_size_error("row length must be a power of two >= 4, got " +
                                 std::to_string(img.width) + " (pad the image first)");
}

}  // namespace detail

inline DisplayStats image_stats(const GrayImage& img) {
    detail::check_image(img);
    DisplayStats s{img.pixels[0], img.pixels[0], std::abs(img.pixels[0])};
    for (double v : img.pixels) {
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
        s.absmax = std::max(s.absmax, std::abs(v));
    }
    return s;
}

// One real-valued image per channel of the scheme, plus per-channel ranges.
struct ChannelImageSet {
    SchemeId scheme_id{};
    std::vector<GrayImage> channels;
    std::vector<DisplayStats> stats;
};

inline ChannelImageSet process_rows(const GrayImage& img, const ConvolutionScheme& s) {
    detail::check_row_length(img);
    ChannelImageSet out;
    out.scheme_id = s.id;
    const std::size_t block = s.block_size();
    out.channels.assign(block, GrayImage(img.width, img.height));
    std::array<double, detail::max_block> spec{};
    for (std::size_t y = 0; y < img.height; ++y) {
        const auto row = img.row(y);
        for (std::size_t x = 0; x < img.width; ++x) {
            detail::analyze_point_into(s, row, x, spec.data());
            for (std::size_t k = 0; k < block; ++k) out.channels[k].at(x, y) = spec[k];
        }
    }
    out.stats.reserve(block);
    for (const GrayImage& ch : out.channels) out.stats.push_back(image_stats(ch));
    return out;
}

enum class DisplayPolicy {
    affine,  // map [min, max] onto [0, 255]
    abs,     // map |v| onto [0, 255] by the largest magnitude
};

// 8-bit display version of a real-valued image. Values are rounded half away
// from zero; a constant (zero-range) image maps to all black.
inline GrayImage to_display(const GrayImage& img, DisplayPolicy policy) {
    const DisplayStats s = image_stats(img);
    GrayImage out(img.width, img.height);
    if (policy == DisplayPolicy::affine) {
        const double range = s.max - s.min;
        if (range > 0.0) {
            const double k = 255.0 / range;
            for (std::size_t i = 0; i < img.pixels.size(); ++i)
                out.pixels[i] = double(std::llround((img.pixels[i] - s.min) * k));
        }
    } else {
        if (s.absmax > 0.0) {
            const double k = 255.0 / s.absmax;
            for (std::size_t i = 0; i < img.pixels.size(); ++i)
                out.pixels[i] = double(std::llround(std::abs(img.pixels[i]) * k));
        }
    }
    return out;
}

enum class SelectionMode {
    weighted,  // channel drawn with probability proportional to its squared value
    uniform,   // channel drawn uniformly among the non-zero-kind channels
};

namespace detail {

inline std::uint64_t row_stream_seed(std::uint64_t master, std::size_t row) {
    return splitmix64(master ^ ((row + 1) * 0x9e3779b97f4a7c15ull));
}

inline double unit_double(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;  // 53-bit uniform in [0,1)
}

}  // namespace detail

// Per-pixel measurement simulation: at every pixel one channel of the
// scheme's spectrum is drawn (per `mode`, never a structurally-zero channel)
// and its magnitude is emitted; the result is display-normalized by the
// largest magnitude. Each row uses its own RNG stream derived from the seed,
// so the output is deterministic and row processing could be parallelized.
inline GrayImage simulate_measured_image(const GrayImage& img, const ConvolutionScheme& s,
                                         SelectionMode mode, std::uint64_t seed) {
    detail::check_row_length(img);
    std::vector<std::size_t> candidates;
    for (const ChannelSpec& ch : s.channels)
        if (ch.kind != ChannelKind::zero) candidates.push_back(ch.index);
    GrayImage raw(img.width, img.height);
    std::array<double, detail::max_block> spec{};
    std::array<double, detail::max_block> weight{};
    for (std::size_t y = 0; y < img.height; ++y) {
        std::mt19937_64 rng(detail::row_stream_seed(seed, y));
        const auto row = img.row(y);
        for (std::size_t x = 0; x < img.width; ++x) {
            detail::analyze_point_into(s, row, x, spec.data());
            std::size_t chosen = candidates[0];
            if (mode == SelectionMode::uniform) {
                const double u = detail::unit_double(rng);
                chosen = candidates[std::size_t(u * double(candidates.size()))];
            } else {
                double total = 0.0;
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                    const double v = spec[candidates[i]];
                    weight[i] = v * v;
                    total += weight[i];
                }
                if (total == 0.0) {
                    raw.at(x, y) = 0.0;
                    continue;
                }
                double u = detail::unit_double(rng) * total;
                std::size_t i = 0;
                while (i + 1 < candidates.size() && u >= weight[i]) {
                    u -= weight[i];
                    ++i;
                }
                chosen = candidates[i];
            }
            raw.at(x, y) = std::abs(spec[chosen]);
        }
    }
    return to_display(raw, DisplayPolicy::abs);
}

// Zero-pads rows on the right up to the next power of two (no-op if the
// width already qualifies).
inline GrayImage pad_width_to_power_of_two(const GrayImage& img) {
    detail::check_image(img);
    const std::size_t target = std::max<std::size_t>(4, next_power_of_two(img.width));
    if (target == img.width) return img;
    GrayImage out(target, img.height);
    for (std::size_t y = 0; y < img.height; ++y)
        std::copy_n(img.row(y).data(), img.width, out.row(y).data());
    return out;
}

// Top-left crop, used to undo padding after processing.
inline GrayImage crop(const GrayImage& img, std::size_t width, std::size_t height) {
    detail::check_image(img);
    if (width == 0 || height == 0 || width > img.width || height > img.height)
        throw invalid_size_error("crop box outside the image");
    GrayImage out(width, height);
    for (std::size_t y = 0; y < height; ++y)
        std::copy_n(img.row(y).data(), width, out.row(y).data());
    return out;
}

}  // namespace qpt
