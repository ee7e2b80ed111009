// Acceptance battery: ten end-to-end criteria with pinned tolerances, one
// PASS/FAIL line each. argv[1] is the CLI binary, used by the last check.
// Exit status 0 only if every criterion passes.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpt/qpt.hpp"

using namespace qpt;
namespace fs = std::filesystem;
using steady = std::chrono::steady_clock;
using V = std::vector<double>;

namespace {

std::string g_cli;  // path to the qpt binary

V rand_ints(std::mt19937_64& rng, std::size_t n, int lo = -9, int hi = 9) {
    V f(n);
    for (double& v : f) v = double(long(rng() % std::uint64_t(hi - lo + 1)) + lo);
    return f;
}

V row_scales(std::size_t n) {
    const PairedMatrix m = dpt_matrix(n);
    V s(n);
    for (std::size_t i = 0; i < n; ++i) {
        int nnz = 0;
        for (int v : m.rows[i]) nnz += (v != 0);
        s[i] = 1.0 / std::sqrt(double(nnz));
    }
    return s;
}

// --- criterion 1: the 4- and 8-point matrices and the orthonormal form ----

bool c1_matrices(std::string& detail) {
    const auto t0 = steady::now();
    const std::vector<std::vector<int>> m4 = {
        {1, 0, -1, 0}, {0, 1, 0, -1}, {1, -1, 1, -1}, {1, 1, 1, 1}};
    const std::vector<std::vector<int>> m8 = {
        {1, 0, 0, 0, -1, 0, 0, 0}, {0, 1, 0, 0, 0, -1, 0, 0}, {0, 0, 1, 0, 0, 0, -1, 0},
        {0, 0, 0, 1, 0, 0, 0, -1}, {1, 0, -1, 0, 1, 0, -1, 0}, {0, 1, 0, -1, 0, 1, 0, -1},
        {1, -1, 1, -1, 1, -1, 1, -1}, {1, 1, 1, 1, 1, 1, 1, 1}};
    if (dpt_matrix(4).rows != m4) {
        detail = "4-point integer matrix deviates from the reference";
        return false;
    }
    if (dpt_matrix(8).rows != m8) {
        detail = "8-point integer matrix deviates from the reference";
        return false;
    }
    const double r = 0.70710678118654752440;
    const std::vector<V> u4 = {
        {r, 0, -r, 0}, {0, r, 0, -r}, {0.5, -0.5, 0.5, -0.5}, {0.5, 0.5, 0.5, 0.5}};
    const UnitaryPairedMatrix u = dpt_unitary(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (std::abs(u.rows[i][j] - u4[i][j]) > 1e-12) {
                detail = "orthonormal 4-point matrix off at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")";
                return false;
            }
    const double ms = std::chrono::duration<double, std::milli>(steady::now() - t0).count();
    if (ms >= 1000.0) {
        detail = "took " + std::to_string(ms) + " ms (budget 1000)";
        return false;
    }
    return true;
}

// --- criterion 2: orthonormality ------------------------------------------

bool c2_unitarity(std::string& detail) {
    for (std::size_t n : {4, 8, 16, 32}) {
        const UnitaryPairedMatrix u = dpt_unitary(n);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t t = 0; t < n; ++t) dot += u.rows[i][t] * u.rows[j][t];
                worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
            }
        if (worst >= 1e-12) {
            detail = "N=" + std::to_string(n) + ": max |UU^T - I| = " + std::to_string(worst);
            return false;
        }
    }
    return true;
}

// --- criterion 3: fast == naive, and exactly 2N-2 additions ---------------

bool c3_fast_vs_naive(std::string& detail) {
    std::mt19937_64 rng(301);
    for (std::size_t n = 4; n <= 1024; n *= 2) {
        for (int rep = 0; rep < 1000; ++rep) {
            const V x = rand_ints(rng, n, -99, 99);
            if (dpt_forward(x) != dpt_naive(x)) {
                detail = "fast and naive spectra differ at N=" + std::to_string(n);
                return false;
            }
        }
        std::vector<counting_scalar> cx(n);
        for (std::size_t i = 0; i < n; ++i) cx[i] = counting_scalar(double(i % 7));
        counting_scalar::reset();
        (void)dpt_forward(cx);
        if (counting_scalar::additions != 2 * n - 2) {
            detail = "N=" + std::to_string(n) + ": " +
                     std::to_string(counting_scalar::additions) + " additions, want " +
                     std::to_string(2 * n - 2);
            return false;
        }
    }
    return true;
}

// --- criterion 4: channels equal their masks (oracle), frozen catalog -----

struct FrozenChannel {
    std::array<int, 5> mask;
    int num, den;
};

bool c4_channel_oracle(std::string& detail) {
    // The named operators that must appear, with their display scales.
    const std::vector<FrozenChannel> named = {
        {{1, 2, 2, 1, 0}, 1, 6},    // 4-tap smoothing
        {{1, -2, 2, -1, 0}, 1, 3},  // 4-level gradient
        {{0, 1, -2, 1, 0}, 1, 2},   // Laplacian
        {{0, 1, 2, 1, 0}, 1, 4},    // 3-tap smoothing
        {{1, -2, 1, 0, 0}, 1, 2},   // second difference left of the point
        {{0, 0, 1, -2, 1}, 1, 2},   // second difference right of the point
        {{1, 2, 6, 2, 1}, 1, 12},   // 5-tap smoothing
        {{1, 2, 0, -2, -1}, 1, 3},  // 5-level gradient
        {{1, 1, -4, 1, 1}, 1, 2},   // wide Laplacian
        {{1, 1, 4, 1, 1}, 1, 8},    // wide smoothing
        {{1, -1, 0, 1, -1}, 1, 2},  // alternating difference
    };
    for (const FrozenChannel& want : named) {
        bool found = false;
        for (const ConvolutionScheme& s : all_schemes())
            for (const ChannelSpec& ch : s.channels)
                found |= (ch.mask == want.mask && ch.scale.num == want.num &&
                          ch.scale.den == want.den);
        if (!found) {
            detail = "catalog is missing a named operator (scale 1/" + std::to_string(want.den) +
                     ")";
            return false;
        }
    }
    std::mt19937_64 rng(401);
    for (int rep = 0; rep < 100; ++rep) {
        const V f = rand_ints(rng, 16);
        for (const ConvolutionScheme& s : all_schemes()) {
            const OracleReport r = channel_oracle_check(s, f, 1e-12);
            if (!r.pass) {
                detail = r.detail;
                return false;
            }
        }
    }
    return true;
}

// --- criterion 5: structural identities, exact ----------------------------

bool c5_identities(std::string& detail) {
    std::mt19937_64 rng(501);
    for (int rep = 0; rep < 100; ++rep) {
        const V f = rand_ints(rng, 16);
        {
            const auto ch = analyze_signal(scheme(SchemeId::s3_laplace), f);
            for (double v : ch[1])
                if (v != 0.0) {
                    detail = "s3-laplace channel 1 not identically zero";
                    return false;
                }
        }
        {
            const auto ch = analyze_signal(scheme(SchemeId::s8_c), f);
            for (std::size_t k : {1, 3, 5})
                for (double v : ch[k])
                    if (v != 0.0) {
                        detail = "s8-c channel " + std::to_string(k) + " not identically zero";
                        return false;
                    }
            for (std::size_t n = 0; n < f.size(); ++n)
                if (ch[2][n] != ch[0][(n + 1) % f.size()]) {
                    detail = "s8-c channel 2 is not channel 0 shifted by one";
                    return false;
                }
        }
        {
            const auto ch = analyze_signal(scheme(SchemeId::s8_b), f);
            for (std::size_t n = 0; n < f.size(); ++n)
                if (ch[6][n] != ch[7][n]) {
                    detail = "s8-b channels 6 and 7 differ";
                    return false;
                }
        }
    }
    return true;
}

// --- criterion 6: circuit equals the orthonormal matrix -------------------

bool c6_circuit(std::string& detail) {
    for (std::size_t k = 1; k <= 4; ++k) {
        const Circuit c = transform_circuit(k);
        if (c.hadamard_count() != k) {
            detail = "k=" + std::to_string(k) + ": " + std::to_string(c.hadamard_count()) +
                     " Hadamard gates, want " + std::to_string(k);
            return false;
        }
        const ComplexMatrix cu = circuit_unitary(c);
        const UnitaryPairedMatrix u = dpt_unitary(std::size_t{1} << k);
        for (std::size_t i = 0; i < u.size; ++i)
            for (std::size_t j = 0; j < u.size; ++j)
                if (std::abs(cu[i][j] - std::complex<double>(u.rows[i][j])) >= 1e-12) {
                    detail = "k=" + std::to_string(k) + ": circuit deviates at (" +
                             std::to_string(i) + "," + std::to_string(j) + ")";
                    return false;
                }
    }
    return true;
}

// --- criterion 7: suffix amplitudes reproduce the classical channels ------

bool c7_quantum_classical(std::string& detail) {
    const auto t0 = steady::now();
    std::mt19937_64 rng(701);
    const V f = rand_ints(rng, 8, -5, 5);
    for (const ConvolutionScheme& s : all_schemes()) {
        const std::size_t block = s.block_size();
        const V scales = row_scales(block);
        for (PrepMode mode : {PrepMode::psi, PrepMode::standard}) {
            PreparedSuperposition prep = prepare_superposition(s, f, mode);
            const double global = prep.global_norm;
            const QuantumState st = apply_transform_suffix(std::move(prep.state), s.qubits);
            for (std::size_t p = 0; p < f.size(); ++p) {
                const LiftedWindow w = lift_window(s, f, p);
                if (w.norm == 0.0) continue;
                const V spec = analyze_point(s, f, p);
                const double denorm =
                    mode == PrepMode::psi ? global : std::sqrt(double(f.size())) * w.norm;
                for (std::size_t j = 0; j < block; ++j) {
                    const double rebuilt =
                        st.amplitude(p * block + j).real() / scales[j] * denorm;
                    if (std::abs(rebuilt - spec[j]) >= 1e-10) {
                        detail = std::string(s.name) + (mode == PrepMode::psi ? " psi" : " std") +
                                 " p=" + std::to_string(p) + " j=" + std::to_string(j) +
                                 ": rebuilt " + std::to_string(rebuilt) + " vs " +
                                 std::to_string(spec[j]);
                        return false;
                    }
                }
            }
        }
    }
    const double ms = std::chrono::duration<double, std::milli>(steady::now() - t0).count();
    if (ms >= 5000.0) {
        detail = "took " + std::to_string(ms) + " ms (budget 5000)";
        return false;
    }
    return true;
}

// --- criterion 8: sampling statistics over a million shots ----------------

bool c8_sampling(std::string& detail) {
    std::mt19937_64 rng(801);
    const V f = rand_ints(rng, 8, -5, 5);
    const std::uint64_t shots = 1000000;
    for (SchemeId id : {SchemeId::s3_laplace, SchemeId::s8_c}) {
        const ConvolutionScheme& s = scheme(id);
        PreparedSuperposition prep = prepare_superposition(s, f, PrepMode::psi);
        const QuantumState st = apply_transform_suffix(std::move(prep.state), s.qubits);
        const auto hist = measure(st, shots, 802);
        std::uint64_t total = 0;
        for (const auto& [outcome, count] : hist) total += count;
        if (total != shots) {
            detail = std::string(s.name) + ": counts sum to " + std::to_string(total);
            return false;
        }
        double tvd = 0.0;
        for (std::size_t i = 0; i < st.dim(); ++i) {
            const auto it = hist.find(i);
            const double emp = it == hist.end() ? 0.0 : double(it->second) / double(shots);
            tvd += std::abs(emp - st.probability(i));
        }
        tvd *= 0.5;
        if (tvd > 0.005) {
            detail = std::string(s.name) + ": TVD " + std::to_string(tvd) + " > 0.005";
            return false;
        }
        for (const auto& [outcome, count] : hist) {
            const ChannelSpec& ch = s.channels[outcome % s.block_size()];
            if (ch.kind == ChannelKind::zero) {
                detail = std::string(s.name) + ": zero channel sampled at outcome " +
                         std::to_string(outcome) + " (" + std::to_string(count) + " counts)";
                return false;
            }
        }
    }
    return true;
}

// --- criterion 9: image surrogates ----------------------------------------

bool c9_images(std::string& detail) {
    const std::size_t w = 512, h = 512;
    GrayImage step(w, h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = w / 2; x < w; ++x) step.at(x, y) = 200.0;
    const GrayImage flat(w, h, 128.0);

    for (const ConvolutionScheme& s : all_schemes()) {
        const auto t0 = steady::now();
        const ChannelImageSet on_step = process_rows(step, s);
        const double ms = std::chrono::duration<double, std::milli>(steady::now() - t0).count();
        if (ms >= 1000.0) {
            detail = std::string(s.name) + ": " + std::to_string(ms) + " ms for 512x512";
            return false;
        }
        const ChannelImageSet on_flat = process_rows(flat, s);
        bool jump_seen = false;
        for (const ChannelSpec& ch : s.channels) {
            if (ch.kind == ChannelKind::gradient || ch.kind == ChannelKind::zero) {
                for (double v : on_flat.channels[ch.index].pixels)
                    if (v != 0.0) {
                        detail = std::string(s.name) + " channel " + std::to_string(ch.index) +
                                 " fires on a constant image";
                        return false;
                    }
            }
            if (ch.kind != ChannelKind::gradient) continue;
            const GrayImage& plane = on_step.channels[ch.index];
            for (std::size_t y = 0; y < h; ++y)
                for (std::size_t x = 0; x < w; ++x) {
                    const bool near_jump = (x + 2 >= w / 2 && x <= w / 2 + 1);
                    const bool near_wrap = (x <= 1 || x + 2 >= w);
                    if (!near_jump && !near_wrap && plane.at(x, y) != 0.0) {
                        detail = std::string(s.name) + " channel " + std::to_string(ch.index) +
                                 " fires away from the edge (x=" + std::to_string(x) + ")";
                        return false;
                    }
                    if ((x == w / 2 || x == w / 2 - 1) && plane.at(x, y) != 0.0) jump_seen = true;
                }
        }
        if (!jump_seen) {
            detail = std::string(s.name) + ": no gradient channel responds to the step";
            return false;
        }
    }

    const ConvolutionScheme& s = scheme(SchemeId::s8_c);
    const GrayImage m1 = simulate_measured_image(step, s, SelectionMode::weighted, 42);
    const GrayImage m2 = simulate_measured_image(step, s, SelectionMode::weighted, 42);
    const GrayImage m3 = simulate_measured_image(step, s, SelectionMode::weighted, 43);
    if (m1.pixels != m2.pixels) {
        detail = "measured image not deterministic for a fixed seed";
        return false;
    }
    if (m1.pixels == m3.pixels) {
        detail = "measured image ignores the seed";
        return false;
    }
    return true;
}

// --- criterion 10: the CLI end to end --------------------------------------

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = "'" + g_cli + "' " + args + " >> '" + log.string() + "' 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

bool c10_cli(std::string& detail) {
    if (g_cli.empty()) {
        detail = "no CLI path on the command line";
        return false;
    }
    const fs::path dir =
        fs::temp_directory_path() / ("qpt-acceptance-" + std::to_string(::getpid()));
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir / "out");
    const fs::path log = dir / "cli.log";

    GrayImage step(512, 512);
    for (std::size_t y = 0; y < 512; ++y)
        for (std::size_t x = 256; x < 512; ++x) step.at(x, y) = 200.0;
    save_pgm(dir / "step.pgm", step);

    bool ok = true;
    const std::string out = (dir / "out").string();
    if (int rc = run_cli("edge --image '" + (dir / "step.pgm").string() + "' --scheme s8-c -o '" +
                             out + "'",
                         log);
        rc != 0) {
        detail = "edge exited with " + std::to_string(rc);
        ok = false;
    }
    if (ok) {
        for (int k = 0; k < 8 && ok; ++k) {
            const fs::path ch = dir / "out" / ("step.c" + std::to_string(k) + ".pgm");
            if (!fs::exists(ch)) {
                detail = "missing " + ch.string();
                ok = false;
            }
        }
        if (ok && !fs::exists(dir / "out" / "step.manifest.tsv")) {
            detail = "missing the manifest";
            ok = false;
        }
        if (ok) {
            const GrayImage ch7 = load_pgm(dir / "out" / "step.c7.pgm");
            if (ch7.width != 512 || ch7.height != 512) {
                detail = "channel image has the wrong size";
                ok = false;
            }
        }
    }
    if (ok) {
        if (int rc = run_cli("measure-sim --image '" + (dir / "step.pgm").string() +
                                 "' --scheme s8-c --seed 7 -o '" + out + "'",
                             log);
            rc != 0) {
            detail = "measure-sim exited with " + std::to_string(rc);
            ok = false;
        } else if (!fs::exists(dir / "out" / "step.measured.pgm")) {
            detail = "missing the measured image";
            ok = false;
        }
    }
    if (ok) {
        // A non-power-of-two width without --pad must exit with the input
        // error code (2), not crash.
        save_pgm(dir / "odd.pgm", GrayImage(500, 4, 1.0));
        const int rc = run_cli("edge --image '" + (dir / "odd.pgm").string() + "' -o '" + out + "'",
                               log);
        if (rc != 2) {
            detail = "unpadded non-power-of-two width exited with " + std::to_string(rc) +
                     ", want 2";
            ok = false;
        }
    }
    if (ok) fs::remove_all(dir, ec);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    struct Criterion {
        const char* name;
        bool (*fn)(std::string&);
    };
    const Criterion criteria[] = {
        {"transform matrices match the frozen references", c1_matrices},
        {"orthonormal transform satisfies U U^T = I", c2_unitarity},
        {"fast transform: exact agreement with the matrix, 2N-2 additions", c3_fast_vs_naive},
        {"every scheme channel equals its mask (direct oracle)", c4_channel_oracle},
        {"structural channel identities hold exactly", c5_identities},
        {"transform circuit equals the matrix, k Hadamards", c6_circuit},
        {"suffix amplitudes reproduce the classical channels", c7_quantum_classical},
        {"sampling: 1e6 shots within 0.005 TVD, zero channels silent", c8_sampling},
        {"image surrogates: edges localized, constants quiet, under 1s", c9_images},
        {"CLI: channel files, manifest, measured image, error codes", c10_cli},
    };

    int passed = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        std::string detail;
        const auto t0 = steady::now();
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(steady::now() - t0).count();
        std::printf("criterion %2d: %-66s %s (%.1f ms)\n", index, c.name,
                    ok ? "PASS" : "FAIL", ms);
        if (!ok && !detail.empty()) std::printf("              %s\n", detail.c_str());
        passed += ok;
    }
    std::printf("ACCEPTANCE: %d/10 PASS\n", passed);
    return passed == 10 ? 0 : 1;
}
