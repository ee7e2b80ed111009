#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/error.hpp"

// The paired transform: an N x N integer matrix with entries in {-1,0,+1}.
// The first N/2 rows are the differences e_j - e_{j+N/2}; the remaining rows
// repeat the size-N/2 matrix across both halves (i.e. they act on the
// half-period sums). The base case for N=2 is [[1,-1],[1,1]].
//
// Because every level only forms sums and differences, the fast forward
// transform needs exactly 2N-2 additions/subtractions and no multiplications.

namespace qpt {

struct PairedMatrix {
    std::size_t size = 0;
    std::vector<std::vector<int>> rows;
};

// Orthonormal form: each integer row divided by its Euclidean length
// (1/sqrt(2) for the first N/2 rows, down to 1/sqrt(N) for the last two).
struct UnitaryPairedMatrix {
    std::size_t size = 0;
    std::vector<std::vector<double>> rows;
};

namespace detail {

inline void check_transform_size(std::size_t n) {
    if (n < 2 || !is_power_of_two(n))
        throw invalid_size_error("transform length must be a power of two >= 2, got " +
                                 std::to_string(n));
}

constexpr double inv_sqrt2 = 0.70710678118654752440;

// Core butterfly loop on caller-provided storage. `scratch` holds the input
// and is clobbered; `out` receives the spectrum. Both have length n.
template <typename T>
void dpt_forward_core(T* scratch, T* out, std::size_t n) {
    std::size_t offset = 0;
    for (std::size_t len = n; len > 1; len /= 2) {
        const std::size_t half = len / 2;
        for (std::size_t j = 0; j < half; ++j)
            out[offset + j] = scratch[j] - scratch[j + half];
        for (std::size_t j = 0; j < half; ++j)
            scratch[j] = scratch[j] + scratch[j + half];
        offset += half;
    }
    out[n - 1] = scratch[0];
}

}  // namespace detail

inline PairedMatrix dpt_matrix(std::size_t n) {
    detail::check_transform_size(n);
    PairedMatrix m;
    m.size = n;
    if (n == 2) {
        m.rows = {{1, -1}, {1, 1}};
        return m;
    }
    m.rows.assign(n, std::vector<int>(n, 0));
    const std::size_t half = n / 2;
    for (std::size_t j = 0; j < half; ++j) {
        m.rows[j][j] = 1;
        m.rows[j][j + half] = -1;
    }
    const PairedMatrix sub = dpt_matrix(half);
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.rows[half + i][j] = sub.rows[i][j % half];
    return m;
}

// Fast transform, 2N-2 additions/subtractions. Works for any type with
// binary +/- (double, integers, instrumented scalars).
template <typename T>
std::vector<T> dpt_forward(std::span<const T> x) {
    detail::check_transform_size(x.size());
    std::vector<T> scratch(x.begin(), x.end());
    std::vector<T> out(x.size());
    detail::dpt_forward_core(scratch.data(), out.data(), x.size());
    return out;
}

template <typename T>
std::vector<T> dpt_forward(const std::vector<T>& x) {
    return dpt_forward(std::span<const T>(x.data(), x.size()));
}

inline UnitaryPairedMatrix dpt_unitary(std::size_t n) {
    const PairedMatrix m = dpt_matrix(n);
    UnitaryPairedMatrix u;
    u.size = n;
    u.rows.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        for (int v : m.rows[i]) sq += double(v) * double(v);
        const double scale = 1.0 / std::sqrt(sq);
        for (std::size_t j = 0; j < n; ++j) u.rows[i][j] = scale * m.rows[i][j];
    }
    return u;
}

// Fast orthonormal transform: the butterfly loop with the per-level row
// scales 2^{-(d+1)/2} folded in (the final two rows share 2^{-D/2}).
inline std::vector<double> dpt_forward_unitary(std::span<const double> x) {
    detail::check_transform_size(x.size());
    const std::size_t n = x.size();
    std::vector<double> scratch(x.begin(), x.end());
    std::vector<double> out(n);
    std::size_t offset = 0;
    double scale = 1.0;
    for (std::size_t len = n; len > 1; len /= 2) {
        const std::size_t half = len / 2;
        scale *= detail::inv_sqrt2;
        for (std::size_t j = 0; j < half; ++j)
            out[offset + j] = (scratch[j] - scratch[j + half]) * scale;
        for (std::size_t j = 0; j < half; ++j)
            scratch[j] += scratch[j + half];
        offset += half;
    }
    out[n - 1] = scratch[0] * scale;
    return out;
}

inline std::vector<double> dpt_forward_unitary(const std::vector<double>& x) {
    return dpt_forward_unitary(std::span<const double>(x.data(), x.size()));
}

// Inverse of the orthonormal transform (= its transpose), reconstructed
// bottom-up from the two-point block in O(N): the running half-period sums
// s_d satisfy s_d[j] = (s_{d+1}[j] + u_d[j])/sqrt2 and
// s_d[j+h] = (s_{d+1}[j] - u_d[j])/sqrt2, where u_d is the level-d block of
// the spectrum (offset N - N/2^d) and s_0 is the signal itself.
inline std::vector<double> dpt_inverse_unitary(std::span<const double> c) {
    detail::check_transform_size(c.size());
    const std::size_t n = c.size();
    const std::size_t depth = log2_exact(n);
    std::vector<double> s{c[n - 1]};
    std::vector<double> next;
    for (std::size_t d = depth; d-- > 0;) {
        const std::size_t h = n >> (d + 1);
        const std::size_t offset = n - (n >> d);
        next.assign(2 * h, 0.0);
        for (std::size_t j = 0; j < h; ++j) {
            next[j] = (s[j] + c[offset + j]) * detail::inv_sqrt2;
            next[j + h] = (s[j] - c[offset + j]) * detail::inv_sqrt2;
        }
        s.swap(next);
    }
    return s;
}

inline std::vector<double> dpt_inverse_unitary(const std::vector<double>& c) {
    return dpt_inverse_unitary(std::span<const double>(c.data(), c.size()));
}

}  // namespace qpt
