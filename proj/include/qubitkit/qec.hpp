// Copyright 2026 The QubitKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Error correction: repetition-code statistics, the three-qubit bit-flip
 * code and Kraus-channel evolution of density matrices.
 *
 * Syndrome ancillas start in |0>, so the error-free syndrome is (0, 0) and
 * s1 = parity(data 0, data 1), s2 = parity(data 1, data 2). A derivation
 * that initializes the ancillas in |1> produces the bit-complemented table.
 */
#pragma once

#include "qubitkit/circuit.hpp"
#include "qubitkit/measure.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qubitkit {

/// Exact-k-flip probabilities of an N-fold repetition code.
struct RepetitionStats {
    double p = 0.0;
    unsigned copies = 0;
    /// flips[k] = C(N, k) p^k (1 - p)^{N-k}.
    std::vector<double> flips;
    /// Probability that more than N/2 copies flip (majority vote fails).
    double majority_failure = 0.0;
};

inline double binomial(unsigned n, unsigned k) {
    double c = 1.0;
    for (unsigned i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

inline RepetitionStats repetition_stats(double p, unsigned copies) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("flip probability must be in [0, 1]");
    }
    if (copies < 1) {
        throw std::invalid_argument("repetition code needs at least one copy");
    }
    RepetitionStats out{p, copies, std::vector<double>(copies + 1), 0.0};
    for (unsigned k = 0; k <= copies; ++k) {
        out.flips[k] = binomial(copies, k) * std::pow(p, k) * std::pow(1.0 - p, copies - k);
        if (2 * k > copies) {
            out.majority_failure += out.flips[k];
        }
    }
    return out;
}

/// P(3b)/P(2b,1b'), P(3b)/P(1b,2b'), P(3b)/P(0b,3b') for three copies.
inline std::array<double, 3> ratio_checks(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("ratio checks need 0 < p < 1");
    }
    const RepetitionStats st = repetition_stats(p, 3);
    const std::array<double, 3> ratios{st.flips[0] / st.flips[1], st.flips[0] / st.flips[2],
                                       st.flips[0] / st.flips[3]};
    const double r = (1.0 - p) / p;
    const std::array<double, 3> closed{r / 3.0, r * r / 3.0, r * r * r};
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(ratios[i] - closed[i]) > 1e-12 * std::max(1.0, std::abs(closed[i]))) {
            throw std::logic_error("repetition ratio disagrees with its closed form");
        }
    }
    return ratios;
}

struct Syndrome {
    unsigned s1 = 0;
    unsigned s2 = 0;
    friend bool operator==(const Syndrome &, const Syndrome &) = default;
};

/// Wire flipped for a syndrome, or nullopt for (0, 0).
inline std::optional<unsigned> syndrome_to_wire(Syndrome s) {
    if (s.s1 == 0 && s.s2 == 0) {
        return std::nullopt;
    }
    if (s.s1 == 1 && s.s2 == 0) {
        return 0U;
    }
    if (s.s1 == 1 && s.s2 == 1) {
        return 1U;
    }
    return 2U;
}

/// alpha0|000> + alpha1|111> via CNOT(0->1), CNOT(0->2).
inline StateVector encode_bitflip(const StateVector &q) {
    if (q.num_qubits() != 1) {
        throw std::invalid_argument("the bit-flip code encodes one qubit");
    }
    q.validate();
    StateVector s = tensor(q, StateVector(2));
    apply_gate_inplace(s, {gates::cnot(), {0, 1}});
    apply_gate_inplace(s, {gates::cnot(), {0, 2}});
    return s;
}

/// X on `wire`, or unchanged when no wire is given.
inline StateVector apply_flip(StateVector s, std::optional<unsigned> wire) {
    if (s.num_qubits() != 3) {
        throw std::invalid_argument("bit-flip errors act on three-qubit states");
    }
    if (!wire) {
        return s;
    }
    if (*wire > 2) {
        throw std::out_of_range("flip wire must be 0, 1 or 2");
    }
    apply_gate_inplace(s, {gates::x(), {*wire}});
    return s;
}

struct SyndromeResult {
    Syndrome syndrome;
    StateVector post_state;
    /// Probability of the observed ancilla outcome; 1 for valid inputs.
    double probability = 1.0;
};

/// Ancilla wires 3, 4 with CNOTs 0->3, 1->3, 1->4, 2->4.
inline Circuit parity_check_circuit() {
    Circuit c(5);
    c.add(gates::cnot(), {0, 3});
    c.add(gates::cnot(), {1, 3});
    c.add(gates::cnot(), {1, 4});
    c.add(gates::cnot(), {2, 4});
    return c;
}

/**
 * Append two |0> ancillas, run the parity check, and measure the ancillas.
 *
 * Inputs must lie in one of the four single-flip images of the code space
 * (span{|000>,|111>} and its images under X_0, X_1, X_2); anything else
 * would make the syndrome random and is rejected.
 */
inline SyndromeResult syndrome_extract(const StateVector &state3) {
    if (state3.num_qubits() != 3) {
        throw std::invalid_argument("syndrome extraction acts on three data qubits");
    }
    state3.validate();
    StateVector s = tensor(state3, StateVector(2));
    apply_circuit_inplace(s, parity_check_circuit());
    const std::vector<unsigned> ancillas{3, 4};
    const auto dist = marginal_distribution(s, ancillas);
    std::size_t outcome = 0;
    for (std::size_t o = 1; o < dist.size(); ++o) {
        if (dist[o] > dist[outcome]) {
            outcome = o;
        }
    }
    if (std::abs(dist[outcome] - 1.0) > 1e-9) {
        throw std::domain_error("state is not in a single-flip image of the code space");
    }
    const MeasurementOutcome m = project(s, ancillas, outcome);
    std::vector<Complex> data(8);
    for (std::size_t x = 0; x < 8; ++x) {
        data[x] = m.post_state[(x << 2) | outcome];
    }
    return {Syndrome{m.bits[0], m.bits[1]}, StateVector(std::move(data)), m.probability};
}

inline StateVector correct(StateVector state3, Syndrome s) {
    return apply_flip(std::move(state3), syndrome_to_wire(s));
}

/// CNOT(0->2), CNOT(0->1), then drop wires 1 and 2, which must read |00>.
inline StateVector decode(const StateVector &state3) {
    if (state3.num_qubits() != 3) {
        throw std::invalid_argument("decode acts on three qubits");
    }
    StateVector s = state3;
    apply_gate_inplace(s, {gates::cnot(), {0, 2}});
    apply_gate_inplace(s, {gates::cnot(), {0, 1}});
    double leak = 0.0;
    for (std::size_t x = 0; x < 8; ++x) {
        if ((x & 3U) != 0) {
            leak += std::norm(s[x]);
        }
    }
    if (std::sqrt(leak) > 1e-9) {
        throw std::domain_error("ancilla wires are not |00>; state was not corrected");
    }
    return StateVector({s[0], s[4]});
}

/// Full pipeline for one qubit and one (or no) flip.
struct BitflipRun {
    StateVector recovered;
    Syndrome syndrome;
    double fidelity = 0.0;
};

inline BitflipRun run_bitflip_code(const StateVector &q, std::optional<unsigned> wire) {
    const StateVector noisy = apply_flip(encode_bitflip(q), wire);
    const SyndromeResult sr = syndrome_extract(noisy);
    const StateVector recovered = decode(correct(sr.post_state, sr.syndrome));
    return {recovered, sr.syndrome, fidelity_mod_phase(recovered, q)};
}

/// 2^n x 2^n Hermitian, unit trace, positive semidefinite operator.
class DensityMatrix {
  public:
    static constexpr unsigned kMaxQubits = 6;

    explicit DensityMatrix(DenseMatrix m) : m_(std::move(m)) {
        if (!m_.is_square() || !is_power_of_two(m_.rows()) || m_.rows() < 2) {
            throw std::invalid_argument("density matrix must be 2^n x 2^n");
        }
        n_ = log2_exact(m_.rows());
        if (n_ > kMaxQubits) {
            throw std::out_of_range("density matrices are limited to 6 qubits");
        }
    }

    [[nodiscard]] unsigned num_qubits() const { return n_; }
    [[nodiscard]] const DenseMatrix &matrix() const { return m_; }
    [[nodiscard]] Complex trace() const { return m_.trace(); }

    [[nodiscard]] double min_eigenvalue() const { return hermitian_eigenvalues(m_).front(); }

    /// Hermitian and trace-1 within 1e-10, eigenvalues above -1e-9.
    void validate() const {
        if (!is_hermitian(m_, Tolerance{1e-10})) {
            throw std::domain_error("density matrix is not Hermitian");
        }
        if (std::abs(trace() - Complex(1.0)) > 1e-10) {
            throw std::domain_error("density matrix trace is not 1");
        }
        if (min_eigenvalue() < -1e-9) {
            throw std::domain_error("density matrix has a negative eigenvalue");
        }
    }

  private:
    unsigned n_ = 1;
    DenseMatrix m_;
};

/// |psi><psi|.
inline DensityMatrix to_density(const StateVector &s) {
    if (s.num_qubits() > DensityMatrix::kMaxQubits) {
        throw std::out_of_range("density matrices are limited to 6 qubits");
    }
    DenseMatrix m(s.dim(), s.dim());
    for (std::size_t r = 0; r < s.dim(); ++r) {
        for (std::size_t c = 0; c < s.dim(); ++c) {
            m(r, c) = s[r] * std::conj(s[c]);
        }
    }
    return DensityMatrix(std::move(m));
}

struct KrausTerm {
    DenseMatrix op;
    double weight = 1.0;
};

/// Weighted error operators with sum_A p_A E_A^dagger E_A = I.
class KrausChannel {
  public:
    explicit KrausChannel(std::vector<KrausTerm> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) {
            throw std::invalid_argument("Kraus channel needs at least one operator");
        }
        const std::size_t dim = terms_.front().op.rows();
        DenseMatrix sum(dim, dim);
        for (const auto &t : terms_) {
            if (!t.op.is_square() || t.op.rows() != dim) {
                throw std::invalid_argument("Kraus operators must share one square shape");
            }
            if (!(t.weight >= 0.0)) {
                throw std::invalid_argument("Kraus weights must be non-negative");
            }
            sum += t.weight * (dagger(t.op) * t.op);
        }
        if (max_abs_diff(sum, DenseMatrix::identity(dim)) > 1e-9) {
            throw std::invalid_argument("Kraus channel is not trace preserving");
        }
    }

    [[nodiscard]] const std::vector<KrausTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t dim() const { return terms_.front().op.rows(); }

  private:
    std::vector<KrausTerm> terms_;
};

/// rho -> sum_A p_A E_A rho E_A^dagger.
inline DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &ch) {
    if (ch.dim() != rho.matrix().rows()) {
        throw std::invalid_argument("channel and density matrix dimensions differ");
    }
    const std::size_t dim = ch.dim();
    DenseMatrix out(dim, dim);
    for (const auto &t : ch.terms()) {
        out += t.weight * (t.op * rho.matrix() * dagger(t.op));
    }
    return DensityMatrix(std::move(out));
}

namespace channels {

inline KrausChannel bit_flip(double p) {
    return KrausChannel({{pauli_letter_matrix('I'), 1.0 - p}, {pauli_letter_matrix('X'), p}});
}

/// Equal weights on I, X, Y, Z: maps every single-qubit state to I/2.
inline KrausChannel uniform_pauli() {
    return KrausChannel({{pauli_letter_matrix('I'), 0.25},
                         {pauli_letter_matrix('X'), 0.25},
                         {pauli_letter_matrix('Y'), 0.25},
                         {pauli_letter_matrix('Z'), 0.25}});
}

} // namespace channels
} // namespace qubitkit
