#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Shared helpers for the test binaries. Seeds are fixed so every run sees
// the same vectors.

namespace testutil {

inline std::vector<double> random_int_vector(std::mt19937_64& rng, std::size_t n, int lo = -9,
                                             int hi = 9) {
    std::vector<double> v(n);
    const std::uint64_t span = std::uint64_t(hi - lo + 1);
    for (double& x : v) x = double(long(rng() % span) + lo);
    return v;
}

inline std::vector<double> random_real_vector(std::mt19937_64& rng, std::size_t n,
                                              double scale = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = (double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0) * scale;
    return v;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace testutil
