#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/conv_schemes.hpp"
#include "qpt/error.hpp"
#include "qpt/paired_transform.hpp"

// Slow reference implementations used to cross-check the fast paths.
// These are deliberately direct transcriptions of the definitions: a
// periodic 1-D mask application and the paired transform as a literal
// matrix product.

namespace qpt {

// An integer tap mask with an anchored center: out[n] is the scaled sum of
// taps[j] * f[n + j - center] over all taps, indices taken periodically.
struct MaskSpec {
    std::vector<int> taps;
    std::size_t center = 0;  // index of the tap applied at the output point
    Rational scale{1, 1};
};

inline std::vector<double> direct_convolution(std::span<const double> f, const MaskSpec& m) {
    if (m.taps.empty()) throw std::invalid_argument("mask has no taps");
    if (m.center >= m.taps.size()) throw std::invalid_argument("mask center outside the taps");
    if (f.size() < m.taps.size())
        throw invalid_size_error("signal shorter than the mask (" + std::to_string(f.size()) +
                                 " < " + std::to_string(m.taps.size()) + ")");
    const std::size_t size = f.size();
    const double scale = m.scale.value();
    std::vector<double> out(size);
    for (std::size_t n = 0; n < size; ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.taps.size(); ++j)
            acc += m.taps[j] * f[periodic_index(n, long(j) - long(m.center), size)];
        out[n] = scale * acc;
    }
    return out;
}

inline std::vector<double> direct_convolution(const std::vector<double>& f, const MaskSpec& m) {
    return direct_convolution(std::span<const double>(f.data(), f.size()), m);
}

// Paired transform as an explicit matrix product, applying each {-1,0,+1}
// entry as an addition or subtraction so integer inputs stay exact.
template <typename T>
std::vector<T> dpt_naive(std::span<const T> x) {
    const PairedMatrix m = dpt_matrix(x.size());
    std::vector<T> out(x.size(), T{});
    for (std::size_t i = 0; i < m.size; ++i)
        for (std::size_t j = 0; j < m.size; ++j) {
            if (m.rows[i][j] == 1)
                out[i] = out[i] + x[j];
            else if (m.rows[i][j] == -1)
                out[i] = out[i] - x[j];
        }
    return out;
}

template <typename T>
std::vector<T> dpt_naive(const std::vector<T>& x) {
    return dpt_naive(std::span<const T>(x.data(), x.size()));
}

struct OracleReport {
    bool pass = true;
    std::string detail;  // names the first failing scheme/channel/point
};

// Checks every channel of a scheme (auxiliary ones included) against the
// direct mask application on one signal. Raw spectra are compared after
// applying the channel scale, so a mismatch in either the mask or the scale
// is caught.
inline OracleReport channel_oracle_check(const ConvolutionScheme& s, std::span<const double> f,
                                         double tol = 1e-12) {
    const auto channels = analyze_signal(s, f);
    for (const ChannelSpec& ch : s.channels) {
        MaskSpec mask{{ch.mask.begin(), ch.mask.end()}, 2, ch.scale};
        const auto expect = direct_convolution(f, mask);
        const double scale = ch.scale.value();
        for (std::size_t n = 0; n < f.size(); ++n) {
            const double got = channels[ch.index][n] * scale;
            if (std::abs(got - expect[n]) > tol) {
                return {false, std::string(s.name) + " channel " + std::to_string(ch.index) +
                                   " (" + ch.name + ") at point " + std::to_string(n) + ": got " +
                                   std::to_string(got) + ", mask gives " + std::to_string(expect[n])};
            }
        }
    }
    return {};
}

inline OracleReport channel_oracle_check(const ConvolutionScheme& s, const std::vector<double>& f,
                                         double tol = 1e-12) {
    return channel_oracle_check(s, std::span<const double>(f.data(), f.size()), tol);
}

}  // namespace qpt
