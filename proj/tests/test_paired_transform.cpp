#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "helpers.hpp"
#include "qpt/instrument.hpp"
#include "qpt/oracle.hpp"
#include "qpt/paired_transform.hpp"

using namespace qpt;

namespace {

std::vector<double> unitary_matrix_apply(const UnitaryPairedMatrix& u,
                                         const std::vector<double>& x) {
    std::vector<double> out(u.size, 0.0);
    for (std::size_t i = 0; i < u.size; ++i)
        for (std::size_t j = 0; j < u.size; ++j) out[i] += u.rows[i][j] * x[j];
    return out;
}

}  // namespace

TEST_CASE("4-point matrix is the frozen literal", "[paired]") {
    const PairedMatrix m = dpt_matrix(4);
    const std::vector<std::vector<int>> expect = {
        {1, 0, -1, 0}, {0, 1, 0, -1}, {1, -1, 1, -1}, {1, 1, 1, 1}};
    REQUIRE(m.size == 4);
    REQUIRE(m.rows == expect);
}

TEST_CASE("8-point matrix is the frozen literal", "[paired]") {
    const PairedMatrix m = dpt_matrix(8);
    const std::vector<std::vector<int>> expect = {
        {1, 0, 0, 0, -1, 0, 0, 0}, {0, 1, 0, 0, 0, -1, 0, 0}, {0, 0, 1, 0, 0, 0, -1, 0},
        {0, 0, 0, 1, 0, 0, 0, -1}, {1, 0, -1, 0, 1, 0, -1, 0}, {0, 1, 0, -1, 0, 1, 0, -1},
        {1, -1, 1, -1, 1, -1, 1, -1}, {1, 1, 1, 1, 1, 1, 1, 1}};
    REQUIRE(m.size == 8);
    REQUIRE(m.rows == expect);
}

TEST_CASE("matrix recursion: bottom half repeats the half-size matrix", "[paired]") {
    for (std::size_t n : {4, 8, 16, 64}) {
        const PairedMatrix m = dpt_matrix(n);
        const PairedMatrix sub = dpt_matrix(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            for (std::size_t t = 0; t < n; ++t) {
                int want = (t == j) ? 1 : (t == j + n / 2 ? -1 : 0);
                REQUIRE(m.rows[j][t] == want);
                REQUIRE(m.rows[n / 2 + j][t] == sub.rows[j][t % (n / 2)]);
            }
        }
    }
}

TEST_CASE("4-point orthonormal matrix is the frozen literal", "[paired]") {
    const UnitaryPairedMatrix u = dpt_unitary(4);
    const double r = 0.70710678118654752440;  // 1/sqrt(2)
    const std::vector<std::vector<double>> expect = {{r, 0, -r, 0},
                                                     {0, r, 0, -r},
                                                     {0.5, -0.5, 0.5, -0.5},
                                                     {0.5, 0.5, 0.5, 0.5}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            REQUIRE(u.rows[i][j] == Catch::Approx(expect[i][j]).margin(1e-15));
}

TEST_CASE("fast transform reproduces frozen spectra", "[paired]") {
    using V = std::vector<double>;
    REQUIRE(dpt_forward(V{1, 1, 1, 1}) == V{0, 0, 0, 4});
    REQUIRE(dpt_forward(V{1, 0, 0, 0}) == V{1, 0, 1, 1});
    REQUIRE(dpt_forward(V{1, 4, 6, 4}) == V{-5, 0, -1, 15});
    REQUIRE(dpt_forward(V{1, 2, 3, 4, 5, 6, 7, 8}) == V{-4, -4, -4, -4, -4, -4, -4, 36});
    REQUIRE(dpt_forward(V{3, 5}) == V{-2, 8});
}

TEST_CASE("fast transform equals the matrix product exactly on integers", "[paired]") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {4, 8, 16, 32, 64, 256}) {
        for (int rep = 0; rep < 50; ++rep) {
            const auto x = testutil::random_int_vector(rng, n, -999, 999);
            REQUIRE(dpt_forward(x) == dpt_naive(x));
        }
    }
}

TEST_CASE("orthonormal fast transform matches the matrix within 1e-12", "[paired]") {
    std::mt19937_64 rng(12);
    for (std::size_t n : {4, 8, 32, 128}) {
        const UnitaryPairedMatrix u = dpt_unitary(n);
        for (int rep = 0; rep < 20; ++rep) {
            const auto x = testutil::random_real_vector(rng, n, 10.0);
            const auto fast = dpt_forward_unitary(x);
            const auto slow = unitary_matrix_apply(u, x);
            REQUIRE(testutil::max_abs_diff(fast, slow) < 1e-12);
        }
    }
}

TEST_CASE("orthonormal transform preserves the norm", "[paired]") {
    std::mt19937_64 rng(13);
    for (std::size_t n : {4, 16, 64, 1024}) {
        const auto x = testutil::random_real_vector(rng, n, 3.0);
        double in = 0, out = 0;
        for (double v : x) in += v * v;
        for (double v : dpt_forward_unitary(x)) out += v * v;
        REQUIRE(out == Catch::Approx(in).epsilon(1e-12));
    }
}

TEST_CASE("inverse undoes the orthonormal transform", "[paired]") {
    std::mt19937_64 rng(14);
    for (std::size_t n : {2, 4, 8, 64, 512}) {
        const auto x = testutil::random_real_vector(rng, n, 5.0);
        const auto back = dpt_inverse_unitary(dpt_forward_unitary(x));
        REQUIRE(testutil::max_abs_diff(back, x) < 1e-12);
    }
}

TEST_CASE("fast transform costs exactly 2N-2 additions", "[paired]") {
    std::mt19937_64 rng(15);
    for (std::size_t n = 2; n <= 1024; n *= 2) {
        std::vector<counting_scalar> x(n);
        for (auto& v : x) v = counting_scalar(double(long(rng() % 19) - 9));
        counting_scalar::reset();
        const auto spec = dpt_forward(x);
        REQUIRE(counting_scalar::additions == 2 * n - 2);
        REQUIRE(spec.size() == n);
    }
}

TEST_CASE("linearity holds exactly on integer inputs", "[paired]") {
    std::mt19937_64 rng(16);
    const std::size_t n = 32;
    const auto f = testutil::random_int_vector(rng, n);
    const auto g = testutil::random_int_vector(rng, n);
    std::vector<double> sum(n);
    for (std::size_t i = 0; i < n; ++i) sum[i] = 3 * f[i] - 2 * g[i];
    const auto tf = dpt_forward(f);
    const auto tg = dpt_forward(g);
    const auto ts = dpt_forward(sum);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(ts[i] == 3 * tf[i] - 2 * tg[i]);
}

TEST_CASE("bad transform sizes are rejected", "[paired]") {
    REQUIRE_THROWS_AS(dpt_matrix(0), invalid_size_error);
    REQUIRE_THROWS_AS(dpt_matrix(1), invalid_size_error);
    REQUIRE_THROWS_AS(dpt_matrix(3), invalid_size_error);
    REQUIRE_THROWS_AS(dpt_matrix(6), invalid_size_error);
    REQUIRE_THROWS_AS(dpt_forward(std::vector<double>{1, 2, 3}), invalid_size_error);
    REQUIRE_THROWS_AS(dpt_forward_unitary(std::vector<double>{1, 2, 3, 4, 5}),
                      invalid_size_error);
}
