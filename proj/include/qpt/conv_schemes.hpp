#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/error.hpp"
#include "qpt/paired_transform.hpp"

// Short-convolution schemes built on the paired transform.
//
// Each scheme lifts a small neighborhood of the signal at an analysis point n
// into a window of 2^k weighted samples, runs the length-2^k paired transform
// over it, and reads the components as channels: one smoothing (convolution)
// channel, one or more gradient channels, channels that are identically zero
// by construction, and auxiliary components with no named operator.
//
// Every channel equals an integer 5-tap mask applied to
// (f[n-2], f[n-1], f[n], f[n+1], f[n+2]) -- exactly, in integer arithmetic --
// and the stored rational scale turns that raw value into the conventional
// operator (e.g. [1 2 2 1]/6 smoothing, [0 1 -2 1 0]/2 Laplacian).

namespace qpt {

enum class SchemeId { s4_smooth, s3_laplace, s8_a, s8_b, s8_c };

enum class ChannelKind { convolution, gradient, zero, auxiliary };

inline const char* to_string(ChannelKind k) {
    switch (k) {
        case ChannelKind::convolution: return "convolution";
        case ChannelKind::gradient: return "gradient";
        case ChannelKind::zero: return "zero";
        case ChannelKind::auxiliary: return "auxiliary";
    }
    return "?";
}

// Exact display factor; raw channel values stay integer-weighted.
struct Rational {
    int num = 1;
    int den = 1;
    double value() const { return double(num) / double(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

// One weighted sample of the lifted window: weight * f[n + offset].
struct LiftTerm {
    int offset;  // in [-2, +2]
    int weight;  // nonzero integer
};

struct ChannelSpec {
    std::size_t index;
    const char* name;
    std::array<int, 5> mask;  // integer taps over offsets -2..+2
    Rational scale;
    ChannelKind kind;
};

struct ConvolutionScheme {
    SchemeId id;
    const char* name;     // CLI identifier, e.g. "s4-smooth"
    const char* summary;  // one-line human description
    std::size_t qubits;   // k: the lift produces 2^k samples
    std::vector<LiftTerm> lift;
    std::vector<ChannelSpec> channels;

    std::size_t block_size() const { return std::size_t{1} << qubits; }
};

inline const std::array<ConvolutionScheme, 5>& all_schemes() {
    static const std::array<ConvolutionScheme, 5> table = {{
        {SchemeId::s4_smooth,
         "s4-smooth",
         "4-point lift; [1 2 2 1]/6 smoothing plus a 4-level gradient",
         2,
         {{-2, 1}, {-1, 2}, {0, 2}, {1, 1}},
         {
             {0, "aux0", {1, 0, -2, 0, 0}, {1, 1}, ChannelKind::auxiliary},
             {1, "aux1", {0, 2, 0, -1, 0}, {1, 1}, ChannelKind::auxiliary},
             {2, "grad4", {1, -2, 2, -1, 0}, {1, 3}, ChannelKind::gradient},
             {3, "smooth4", {1, 2, 2, 1, 0}, {1, 6}, ChannelKind::convolution},
         }},
        {SchemeId::s3_laplace,
         "s3-laplace",
         "3-point lift; [1 2 1]/4 smoothing plus the [1 -2 1]/2 Laplacian",
         2,
         {{-1, 1}, {0, -1}, {1, 1}, {0, -1}},
         {
             {0, "cdiff", {0, 1, 0, -1, 0}, {1, 1}, ChannelKind::auxiliary},
             {1, "zero", {0, 0, 0, 0, 0}, {1, 1}, ChannelKind::zero},
             {2, "smooth3", {0, 1, 2, 1, 0}, {1, 4}, ChannelKind::convolution},
             {3, "laplace3", {0, 1, -2, 1, 0}, {1, 2}, ChannelKind::gradient},
         }},
        {SchemeId::s8_a,
         "s8-a",
         "8-point lift; [1 2 6 2 1]/12 smoothing, two offset second differences, 5-level gradient",
         3,
         {{-2, 1}, {0, -1}, {-1, 2}, {0, -2}, {0, 2}, {1, -2}, {0, 1}, {2, -1}},
         {
             {0, "aux0", {1, 0, -2, 0, 0}, {1, 1}, ChannelKind::auxiliary},
             {1, "aux1", {0, 0, -1, 2, 0}, {1, 1}, ChannelKind::auxiliary},
             {2, "aux2", {0, 2, -1, 0, 0}, {1, 1}, ChannelKind::auxiliary},
             {3, "aux3", {0, 0, -2, 0, 1}, {1, 1}, ChannelKind::auxiliary},
             {4, "g2-left", {1, -2, 1, 0, 0}, {1, 2}, ChannelKind::gradient},
             {5, "g2-right", {0, 0, 1, -2, 1}, {1, 2}, ChannelKind::gradient},
             {6, "smooth5", {1, 2, 6, 2, 1}, {1, 12}, ChannelKind::convolution},
             {7, "sobel5", {1, 2, 0, -2, -1}, {1, 3}, ChannelKind::gradient},
         }},
        {SchemeId::s8_b,
         "s8-b",
         "8-point lift; 4-tap averaging channel and a duplicated 5-level gradient",
         3,
         {{-2, 1}, {0, -1}, {-1, 2}, {0, -2}, {1, -2}, {0, 2}, {2, -1}, {0, 1}},
         {
             {0, "aux0", {1, 0, 0, 2, 0}, {1, 1}, ChannelKind::auxiliary},
             {1, "aux1", {0, 0, -3, 0, 0}, {1, 1}, ChannelKind::auxiliary},
             {2, "aux2", {0, 2, 0, 0, 1}, {1, 1}, ChannelKind::auxiliary},
             {3, "aux3", {0, 0, -3, 0, 0}, {1, 1}, ChannelKind::auxiliary},
             {4, "avg4", {1, -2, 0, -2, 1}, {1, 2}, ChannelKind::convolution},
             {5, "aux5", {0, 0, 2, 0, 0}, {1, 1}, ChannelKind::auxiliary},
             {6, "sobel5", {1, 2, 0, -2, -1}, {1, 3}, ChannelKind::gradient},
             {7, "sobel5b", {1, 2, 0, -2, -1}, {1, 3}, ChannelKind::gradient},
         }},
        {SchemeId::s8_c,
         "s8-c",
         "8-point lift; three exactly-zero channels, [1 1 4 1 1]/8 smoothing, wide Laplacian",
         3,
         {{-2, 1}, {0, -1}, {-1, 1}, {0, -1}, {1, 1}, {0, -1}, {2, 1}, {0, -1}},
         {
             {0, "diff-a", {1, 0, 0, -1, 0}, {1, 1}, ChannelKind::gradient},
             {1, "zero", {0, 0, 0, 0, 0}, {1, 1}, ChannelKind::zero},
             {2, "diff-b", {0, 1, 0, 0, -1}, {1, 1}, ChannelKind::gradient},
             {3, "zero", {0, 0, 0, 0, 0}, {1, 1}, ChannelKind::zero},
             {4, "alt-diff", {1, -1, 0, 1, -1}, {1, 2}, ChannelKind::gradient},
             {5, "zero", {0, 0, 0, 0, 0}, {1, 1}, ChannelKind::zero},
             {6, "smooth5", {1, 1, 4, 1, 1}, {1, 8}, ChannelKind::convolution},
             {7, "laplace5", {1, 1, -4, 1, 1}, {1, 2}, ChannelKind::gradient},
         }},
    }};
    return table;
}

inline const ConvolutionScheme& scheme(SchemeId id) {
    for (const auto& s : all_schemes())
        if (s.id == id) return s;
    throw std::logic_error("unknown scheme id");
}

// Lookup by CLI name; returns nullptr when the name is unknown.
inline const ConvolutionScheme* find_scheme(std::string_view cli_name) {
    for (const auto& s : all_schemes())
        if (cli_name == s.name) return &s;
    return nullptr;
}

namespace detail {

inline void check_signal(std::span<const double> f) {
    if (f.size() < 4 || !is_power_of_two(f.size()))
        throw invalid_size_error("signal length must be a power of two >= 4, got " +
                                 std::to_string(f.size()));
}

// Largest lift block among the shipped schemes; lets hot paths use
// stack buffers instead of heap spectra.
inline constexpr std::size_t max_block = 8;

template <typename Out>
void lift_into(const ConvolutionScheme& s, std::span<const double> f, std::size_t n, Out* out) {
    const std::size_t size = f.size();
    for (std::size_t j = 0; j < s.lift.size(); ++j) {
        const LiftTerm& t = s.lift[j];
        out[j] = t.weight * f[periodic_index(n, t.offset, size)];
    }
}

inline void analyze_point_into(const ConvolutionScheme& s, std::span<const double> f,
                               std::size_t n, double* out) {
    std::array<double, max_block> scratch{};
    lift_into(s, f, n, scratch.data());
    dpt_forward_core(scratch.data(), out, s.block_size());
}

}  // namespace detail

// The lifted window at analysis point n: 2^k weighted samples plus their
// Euclidean length (the per-window normalizer A(n)).
struct LiftedWindow {
    std::size_t point = 0;
    std::vector<double> amplitudes;
    double norm = 0.0;
};

inline LiftedWindow lift_window(const ConvolutionScheme& s, std::span<const double> f,
                                std::size_t n) {
    detail::check_signal(f);
    if (n >= f.size()) throw std::out_of_range("analysis point outside the signal");
    LiftedWindow w;
    w.point = n;
    w.amplitudes.resize(s.block_size());
    detail::lift_into(s, f, n, w.amplitudes.data());
    double sq = 0.0;
    for (double a : w.amplitudes) sq += a * a;
    w.norm = std::sqrt(sq);
    return w;
}

// Raw paired spectrum of the lifted window: integer-valued for integer
// signals. Channel k's operator value is spectrum[k] * channels[k].scale.
inline std::vector<double> analyze_point(const ConvolutionScheme& s, std::span<const double> f,
                                         std::size_t n) {
    detail::check_signal(f);
    if (n >= f.size()) throw std::out_of_range("analysis point outside the signal");
    std::vector<double> out(s.block_size());
    detail::analyze_point_into(s, f, n, out.data());
    return out;
}

// All channels over the whole (periodic) signal: result[k][n] is the raw
// channel-k value at point n.
inline std::vector<std::vector<double>> analyze_signal(const ConvolutionScheme& s,
                                                       std::span<const double> f) {
    detail::check_signal(f);
    const std::size_t block = s.block_size();
    std::vector<std::vector<double>> channels(block, std::vector<double>(f.size()));
    std::array<double, detail::max_block> spec{};
    for (std::size_t n = 0; n < f.size(); ++n) {
        detail::analyze_point_into(s, f, n, spec.data());
        for (std::size_t k = 0; k < block; ++k) channels[k][n] = spec[k];
    }
    return channels;
}

inline std::vector<std::vector<double>> analyze_signal(const ConvolutionScheme& s,
                                                       const std::vector<double>& f) {
    return analyze_signal(s, std::span<const double>(f.data(), f.size()));
}

}  // namespace qpt
