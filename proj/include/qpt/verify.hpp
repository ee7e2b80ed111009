#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/conv_schemes.hpp"
#include "qpt/oracle.hpp"
#include "qpt/paired_transform.hpp"
#include "qpt/qsim.hpp"

// Self-check battery behind `verify` in the CLI: transform orthonormality,
// circuit-vs-matrix agreement, every scheme's channels against the direct
// mask oracle on random signals, and the structural channel identities.
// Prints one line per check; returns overall pass/fail.

namespace qpt {

struct VerifyOptions {
    std::uint64_t seed = default_seed;
    std::size_t signals = 100;       // random signals per scheme
    std::size_t signal_length = 16;  // power of two >= 4
};

namespace detail {

inline std::vector<double> random_int_signal(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> f(n);
    for (double& v : f) v = double(long(rng() % 17) - 8);  // integers in [-8, 8]
    return f;
}

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

inline bool verify_line(std::ostream& out, bool ok, const std::string& text) {
    out << (ok ? "ok   " : "FAIL ") << text << "\n";
    return ok;
}

}  // namespace detail

inline bool run_verification(std::ostream& out, const VerifyOptions& opt = {}) {
    bool all = true;

    // Orthonormality: max |U U^T - I| over small sizes.
    {
        double worst = 0.0;
        for (std::size_t n : {4, 8, 16, 32}) {
            const UnitaryPairedMatrix u = dpt_unitary(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    double dot = 0.0;
                    for (std::size_t t = 0; t < n; ++t) dot += u.rows[i][t] * u.rows[j][t];
                    worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
        }
        all &= detail::verify_line(out, worst < 1e-12,
                                   "orthonormal transform for N=4,8,16,32 (max dev " +
                                       detail::sci(worst) + ")");
    }

    // Circuit equals the orthonormal matrix, with exactly k Hadamards.
    {
        double worst = 0.0;
        bool counts_ok = true;
        for (std::size_t k = 1; k <= 4; ++k) {
            const Circuit c = transform_circuit(k);
            counts_ok &= (c.hadamard_count() == k);
            const ComplexMatrix cu = circuit_unitary(c);
            const UnitaryPairedMatrix u = dpt_unitary(std::size_t{1} << k);
            for (std::size_t i = 0; i < u.size; ++i)
                for (std::size_t j = 0; j < u.size; ++j)
                    worst = std::max(worst, std::abs(cu[i][j] - std::complex<double>(u.rows[i][j])));
        }
        all &= detail::verify_line(out, worst < 1e-12 && counts_ok,
                                   "transform circuit matches the matrix for k=1..4, k Hadamards "
                                   "each (max dev " +
                                       detail::sci(worst) + ")");
    }

    // Fast forward/inverse round trip.
    {
        std::mt19937_64 rng(splitmix64(opt.seed ^ 0x726f756e64ull));
        double worst = 0.0;
        for (std::size_t n : {4, 8, 16, 64}) {
            for (int rep = 0; rep < 20; ++rep) {
                const std::vector<double> x = detail::random_int_signal(rng, n);
                const std::vector<double> back = dpt_inverse_unitary(dpt_forward_unitary(x));
                for (std::size_t i = 0; i < n; ++i)
                    worst = std::max(worst, std::abs(back[i] - x[i]));
            }
        }
        all &= detail::verify_line(out, worst < 1e-12,
                                   "orthonormal forward/inverse round trip (max dev " +
                                       detail::sci(worst) + ")");
    }

    // Channel oracle on random integer signals, per scheme.
    for (const ConvolutionScheme& s : all_schemes()) {
        std::mt19937_64 rng(splitmix64(opt.seed ^ std::uint64_t(s.id)));
        OracleReport rep;
        std::size_t checked = 0;
        for (std::size_t i = 0; i < opt.signals && rep.pass; ++i) {
            rep = channel_oracle_check(s, detail::random_int_signal(rng, opt.signal_length));
            ++checked;
        }
        all &= detail::verify_line(
            out, rep.pass,
            std::string(s.name) + ": " + std::to_string(checked) +
                " random signals, mask channels match the direct oracle" +
                (rep.pass ? "" : " -- " + rep.detail));
    }

    // Structural identities, exact (not within a tolerance).
    {
        std::mt19937_64 rng(splitmix64(opt.seed ^ 0x7374727563ull));
        bool zeros_ok = true, dup_ok = true, shift_ok = true;
        for (std::size_t i = 0; i < opt.signals; ++i) {
            const std::vector<double> f = detail::random_int_signal(rng, opt.signal_length);
            for (const ConvolutionScheme& s : all_schemes()) {
                const auto ch = analyze_signal(s, f);
                for (const ChannelSpec& spec : s.channels)
                    if (spec.kind == ChannelKind::zero)
                        for (double v : ch[spec.index]) zeros_ok &= (v == 0.0);
                if (s.id == SchemeId::s8_b)
                    for (std::size_t n = 0; n < f.size(); ++n) dup_ok &= (ch[6][n] == ch[7][n]);
                if (s.id == SchemeId::s8_c)
                    for (std::size_t n = 0; n < f.size(); ++n)
                        shift_ok &= (ch[2][n] == ch[0][(n + 1) % f.size()]);
            }
        }
        all &= detail::verify_line(out, zeros_ok, "zero-kind channels are identically zero");
        all &= detail::verify_line(out, dup_ok, "s8-b: channel 6 == channel 7");
        all &= detail::verify_line(out, shift_ok, "s8-c: channel 2 is channel 0 shifted by one");
    }

    out << (all ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return all;
}

}  // namespace qpt
