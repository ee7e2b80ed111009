#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/conv_schemes.hpp"
#include "qpt/error.hpp"

// Dense statevector simulator, just big enough for this library: H and X
// gates with optional multi-qubit controls (each control may require 0 or 1),
// a circuit that realizes the orthonormal paired transform on k qubits, and
// window-superposition state preparation for the convolution schemes.
//
// Conventions: qubit 0 is the least significant bit of a basis index; a gate
// on qubit q pairs indices that differ in bit q. The window register of a
// prepared superposition occupies the low k qubits, so the amplitude of
// analysis point p, window sample j sits at basis index p * 2^k + j.

namespace qpt {

inline constexpr std::size_t max_qubits = 24;

class QuantumState;
struct Gate;
inline QuantumState apply_gate(QuantumState state, const Gate& g);

class QuantumState {
  public:
    // Computational basis state |basis_index> on `qubits` qubits.
    QuantumState(std::size_t qubits, std::size_t basis_index) : qubits_(check_qubits(qubits)) {
        amps_.assign(std::size_t{1} << qubits, {0.0, 0.0});
        if (basis_index >= amps_.size())
            throw std::out_of_range("basis index outside the state space");
        amps_[basis_index] = {1.0, 0.0};
    }

    // Normalizes a copy of the given amplitudes; throws if they are all zero.
    static QuantumState from_amplitudes(std::size_t qubits,
                                        std::vector<std::complex<double>> amps) {
        check_qubits(qubits);
        if (amps.size() != (std::size_t{1} << qubits))
            throw invalid_size_error("amplitude count does not match the qubit count");
        double sq = 0.0;
        for (const auto& a : amps) sq += std::norm(a);
        if (sq <= 0.0) throw normalization_error("cannot normalize the zero vector");
        const double inv = 1.0 / std::sqrt(sq);
        for (auto& a : amps) a *= inv;
        return raw(qubits, std::move(amps));
    }

    static QuantumState from_amplitudes(std::size_t qubits, std::span<const double> amps) {
        std::vector<std::complex<double>> c(amps.size());
        for (std::size_t i = 0; i < amps.size(); ++i) c[i] = amps[i];
        return from_amplitudes(qubits, std::move(c));
    }

    // Adopts amplitudes verbatim; the caller guarantees the norm.
    static QuantumState raw(std::size_t qubits, std::vector<std::complex<double>> amps) {
        check_qubits(qubits);
        if (amps.size() != (std::size_t{1} << qubits))
            throw invalid_size_error("amplitude count does not match the qubit count");
        QuantumState st;
        st.qubits_ = qubits;
        st.amps_ = std::move(amps);
        return st;
    }

    std::size_t num_qubits() const { return qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::complex<double> amplitude(std::size_t i) const { return amps_.at(i); }
    double probability(std::size_t i) const { return std::norm(amps_.at(i)); }

    double norm() const {
        double sq = 0.0;
        for (const auto& a : amps_) sq += std::norm(a);
        return std::sqrt(sq);
    }

  private:
    QuantumState() = default;

    static std::size_t check_qubits(std::size_t q) {
        if (q < 1 || q > max_qubits)
            throw invalid_size_error("qubit count must be in [1, " +
                                     std::to_string(max_qubits) + "], got " + std::to_string(q));
        return q;
    }

    std::size_t qubits_ = 0;
    std::vector<std::complex<double>> amps_;

    friend QuantumState apply_gate(QuantumState, const Gate&);
};

enum class GateKind { hadamard, pauli_x };

// A control condition: the gate acts only where `qubit` reads `value`.
struct Control {
    std::size_t qubit;
    int value;  // 0 or 1
};

struct Gate {
    GateKind kind;
    std::size_t target;
    std::vector<Control> controls;

    static Gate hadamard(std::size_t target, std::vector<Control> controls = {}) {
        return {GateKind::hadamard, target, std::move(controls)};
    }
    static Gate pauli_x(std::size_t target, std::vector<Control> controls = {}) {
        return {GateKind::pauli_x, target, std::move(controls)};
    }
};

struct Circuit {
    std::size_t qubits = 0;
    std::vector<Gate> gates;

    std::size_t hadamard_count() const {
        std::size_t n = 0;
        for (const auto& g : gates) n += (g.kind == GateKind::hadamard);
        return n;
    }
};

inline QuantumState apply_gate(QuantumState state, const Gate& g) {
    const std::size_t m = state.num_qubits();
    if (g.target >= m) throw std::out_of_range("gate target outside the register");
    std::uint64_t cmask = 0, cvalue = 0;
    for (const Control& c : g.controls) {
        if (c.qubit >= m) throw std::out_of_range("gate control outside the register");
        if (c.qubit == g.target) throw std::invalid_argument("control collides with the target");
        if (c.value != 0 && c.value != 1)
            throw std::invalid_argument("control value must be 0 or 1");
        cmask |= std::uint64_t{1} << c.qubit;
        if (c.value) cvalue |= std::uint64_t{1} << c.qubit;
    }
    auto& amps = state.amps_;
    const std::uint64_t tbit = std::uint64_t{1} << g.target;
    const std::uint64_t dim = amps.size();
    // Visit each (i, i|tbit) pair once via its lower index. Controls never
    // involve the target bit, so one check covers both members.
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & tbit) continue;
        if ((i & cmask) != cvalue) continue;
        const std::uint64_t j = i | tbit;
        const std::complex<double> a = amps[i];
        const std::complex<double> b = amps[j];
        if (g.kind == GateKind::hadamard) {
            amps[i] = (a + b) * detail::inv_sqrt2;
            amps[j] = (a - b) * detail::inv_sqrt2;
        } else {
            amps[i] = b;
            amps[j] = a;
        }
    }
    return state;
}

inline QuantumState apply_circuit(QuantumState state, const Circuit& c) {
    if (c.qubits > state.num_qubits())
        throw invalid_size_error("circuit needs more qubits than the state has");
    for (const Gate& g : c.gates) state = apply_gate(std::move(state), g);
    return state;
}

// Circuit realizing the orthonormal paired transform on k qubits with
// exactly k Hadamard gates and k NOT gates: an H ladder from the top qubit
// down, each level zero-controlled on all higher qubits, then the matching
// NOT ladder back up. Composed on 2^k amplitudes it equals dpt_unitary(2^k).
inline Circuit transform_circuit(std::size_t k) {
    if (k < 1 || k > max_qubits)
        throw invalid_size_error("transform circuit needs 1.." + std::to_string(max_qubits) +
                                 " qubits, got " + std::to_string(k));
    Circuit c{k, {}};
    c.gates.reserve(2 * k);
    for (std::size_t level = k; level-- > 0;) {
        std::vector<Control> ctrl;
        for (std::size_t q = level + 1; q < k; ++q) ctrl.push_back({q, 0});
        c.gates.push_back(Gate::hadamard(level, std::move(ctrl)));
    }
    for (std::size_t level = 0; level < k; ++level) {
        std::vector<Control> ctrl;
        for (std::size_t q = level + 1; q < k; ++q) ctrl.push_back({q, 0});
        c.gates.push_back(Gate::pauli_x(level, std::move(ctrl)));
    }
    return c;
}

using ComplexMatrix = std::vector<std::vector<std::complex<double>>>;

// Dense unitary of a circuit, column by column. Quadratic in the dimension,
// so it is capped at 10 qubits; meant for verification, not simulation.
inline ComplexMatrix circuit_unitary(const Circuit& c) {
    if (c.qubits > 10)
        throw invalid_size_error("unitary extraction is capped at 10 qubits");
    const std::size_t dim = std::size_t{1} << c.qubits;
    ComplexMatrix u(dim, std::vector<std::complex<double>>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const QuantumState out = apply_circuit(QuantumState(c.qubits, col), c);
        for (std::size_t row = 0; row < dim; ++row) u[row][col] = out.amplitude(row);
    }
    return u;
}

enum class PrepMode {
    standard,  // per-window normalization, uniform weight over usable windows
    psi,       // one global normalizer over all lifted amplitudes
};

struct PreparedSuperposition {
    QuantumState state;
    // Analysis points whose lifted window is identically zero. In standard
    // mode they carry zero amplitude and the remaining points are re-weighted
    // uniformly; in psi mode their blocks are zero by construction.
    std::vector<std::size_t> zero_windows;
    double global_norm = 0.0;  // Euclidean norm of all lifted amplitudes
};

// Builds the window superposition for a scheme over a periodic signal:
// the amplitude block at prefix p is the lifted window at analysis point p,
// normalized per `mode`. The result is a unit vector.
inline PreparedSuperposition prepare_superposition(const ConvolutionScheme& s,
                                                   std::span<const double> f, PrepMode mode) {
    detail::check_signal(f);
    const std::size_t points = f.size();
    const std::size_t r = log2_exact(points);
    const std::size_t k = s.qubits;
    if (r + k > max_qubits)
        throw invalid_size_error("signal needs " + std::to_string(r + k) +
                                 " qubits, the simulator caps at " + std::to_string(max_qubits));
    const std::size_t block = s.block_size();

    std::vector<double> lifted(points * block);
    std::vector<double> window_sq(points, 0.0);
    std::vector<std::size_t> zero_windows;
    double global_sq = 0.0;
    for (std::size_t p = 0; p < points; ++p) {
        detail::lift_into(s, f, p, lifted.data() + p * block);
        double sq = 0.0;
        for (std::size_t j = 0; j < block; ++j) {
            const double y = lifted[p * block + j];
            sq += y * y;
        }
        window_sq[p] = sq;
        global_sq += sq;
        if (sq == 0.0) zero_windows.push_back(p);
    }
    if (global_sq <= 0.0)
        throw normalization_error("zero signal: no window can be normalized");

    std::vector<std::complex<double>> amps(points * block, {0.0, 0.0});
    if (mode == PrepMode::psi) {
        const double inv = 1.0 / std::sqrt(global_sq);
        for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = lifted[i] * inv;
    } else {
        const std::size_t usable = points - zero_windows.size();
        const double prefix_amp = 1.0 / std::sqrt(double(usable));
        for (std::size_t p = 0; p < points; ++p) {
            if (window_sq[p] == 0.0) continue;
            const double inv = prefix_amp / std::sqrt(window_sq[p]);
            for (std::size_t j = 0; j < block; ++j)
                amps[p * block + j] = lifted[p * block + j] * inv;
        }
    }
    return {QuantumState::raw(r + k, std::move(amps)), std::move(zero_windows),
            std::sqrt(global_sq)};
}

// Runs the k-qubit transform circuit on the low (window) register of a
// larger state; every analysis-point block is transformed independently.
inline QuantumState apply_transform_suffix(QuantumState state, std::size_t k) {
    if (k < 1 || k > state.num_qubits())
        throw invalid_size_error("suffix register larger than the state");
    const Circuit c = transform_circuit(k);
    for (const Gate& g : c.gates) state = apply_gate(std::move(state), g);
    return state;
}

// Samples `shots` measurements in the computational basis. Outcomes with
// exactly zero probability are never drawn (they are excluded from the
// cumulative table, not merely improbable). Deterministic for a given seed.
inline std::map<std::size_t, std::uint64_t> measure(const QuantumState& state,
                                                    std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    std::vector<std::pair<double, std::size_t>> cdf;  // (cumulative weight, outcome)
    double total = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p > 0.0) {
            total += p;
            cdf.emplace_back(total, i);
        }
    }
    if (cdf.empty()) throw normalization_error("cannot sample the zero state");

    std::mt19937_64 rng(seed);
    std::map<std::size_t, std::uint64_t> hist;
    for (std::uint64_t s = 0; s < shots; ++s) {
        // 53-bit uniform in [0,1); scaled by the actual total weight so a
        // slightly off-unit state still samples correctly.
        const double u = double(rng() >> 11) * 0x1.0p-53 * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u,
                                   [](double v, const auto& e) { return v < e.first; });
        if (it == cdf.end()) --it;  // guards the u == total rounding edge
        ++hist[it->second];
    }
    return hist;
}

// Probability distribution over the low `suffix_qubits` outcomes given that
// the high (prefix) qubits read `prefix`.
inline std::vector<double> conditional_suffix_distribution(const QuantumState& state,
                                                           std::size_t suffix_qubits,
                                                           std::size_t prefix) {
    const std::size_t m = state.num_qubits();
    if (suffix_qubits < 1 || suffix_qubits > m)
        throw invalid_size_error("suffix register larger than the state");
    const std::size_t prefixes = std::size_t{1} << (m - suffix_qubits);
    if (prefix >= prefixes) throw std::out_of_range("prefix outside the register");
    const std::size_t block = std::size_t{1} << suffix_qubits;
    std::vector<double> p(block);
    double total = 0.0;
    for (std::size_t j = 0; j < block; ++j) {
        p[j] = state.probability(prefix * block + j);
        total += p[j];
    }
    if (total <= 0.0)
        throw normalization_error("conditional distribution on a zero-probability prefix");
    for (double& v : p) v /= total;
    return p;
}

}  // namespace qpt
