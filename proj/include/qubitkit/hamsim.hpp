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
 * Pauli-sum Hamiltonians: exact evolution, Pauli-string exponential
 * circuits and first-order Trotter product formulas.
 */
#pragma once

#include "qubitkit/circuit.hpp"
#include "qubitkit/measure.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qubitkit {

inline constexpr unsigned kMaxHamiltonianQubits = 10;

class PauliString {
  public:
    explicit PauliString(std::string letters) : letters_(std::move(letters)) {
        if (letters_.empty()) {
            throw std::invalid_argument("Pauli string must have at least one letter");
        }
        for (auto &c : letters_) {
            if (c >= 'a' && c <= 'z') {
                c = static_cast<char>(c - 'a' + 'A');
            }
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw std::invalid_argument("Pauli letters are I, X, Y, Z");
            }
        }
    }

    [[nodiscard]] const std::string &letters() const { return letters_; }
    [[nodiscard]] unsigned size() const { return static_cast<unsigned>(letters_.size()); }
    [[nodiscard]] char operator[](std::size_t i) const { return letters_[i]; }
    [[nodiscard]] bool is_identity() const {
        return letters_.find_first_not_of('I') == std::string::npos;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::string letters_;
};

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;
};

/// Real-weighted sum of Pauli strings, hence Hermitian.
class PauliSumHamiltonian {
  public:
    explicit PauliSumHamiltonian(unsigned n) : n_(n) {
        if (n < 1) {
            throw std::invalid_argument("Hamiltonian needs at least one qubit");
        }
    }

    PauliSumHamiltonian(unsigned n, std::vector<PauliTerm> terms) : PauliSumHamiltonian(n) {
        for (auto &t : terms) {
            add(t.coefficient, std::move(t.string));
        }
    }

    PauliSumHamiltonian &add(double coefficient, PauliString s) {
        if (s.size() != n_) {
            throw std::invalid_argument("Pauli string length does not match qubit count");
        }
        if (!std::isfinite(coefficient)) {
            throw std::invalid_argument("Hamiltonian coefficients must be finite");
        }
        terms_.push_back({coefficient, std::move(s)});
        return *this;
    }

    PauliSumHamiltonian &add(double coefficient, const std::string &letters) {
        return add(coefficient, PauliString(letters));
    }

    [[nodiscard]] unsigned num_qubits() const { return n_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }

  private:
    unsigned n_;
    std::vector<PauliTerm> terms_;
};

/**
 * Text form, one term per line: `<coefficient> <LETTERS>`, e.g. `0.5 ZZI`.
 * `#` starts a comment; blank lines are ignored. All strings must have the
 * same length.
 */
inline PauliSumHamiltonian parse_hamiltonian(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::vector<PauliTerm> terms;
    unsigned n = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string coeff_tok;
        std::string letters;
        if (!(ls >> coeff_tok)) {
            continue;
        }
        auto fail = [&](const std::string &msg) {
            return std::invalid_argument("hamiltonian line " + std::to_string(line_no) + ": " + msg);
        };
        double c = 0.0;
        try {
            std::size_t used = 0;
            c = std::stod(coeff_tok, &used);
            if (used != coeff_tok.size()) {
                throw fail("malformed coefficient '" + coeff_tok + "'");
            }
        } catch (const std::logic_error &) {
            throw fail("malformed coefficient '" + coeff_tok + "'");
        }
        std::string extra;
        if (!(ls >> letters) || (ls >> extra)) {
            throw fail("expected `<coefficient> <LETTERS>`");
        }
        PauliString ps = [&] {
            try {
                return PauliString(letters);
            } catch (const std::invalid_argument &e) {
                throw fail(e.what());
            }
        }();
        if (n == 0) {
            n = ps.size();
        } else if (ps.size() != n) {
            throw fail("Pauli string length differs from earlier terms");
        }
        terms.push_back({c, std::move(ps)});
    }
    if (terms.empty()) {
        throw std::invalid_argument("hamiltonian has no terms");
    }
    return PauliSumHamiltonian(n, std::move(terms));
}

inline DenseMatrix pauli_string_matrix(const PauliString &p) {
    if (p.size() > kMaxHamiltonianQubits) {
        throw std::out_of_range("dense Pauli strings are limited to 10 qubits");
    }
    return pauli_word_matrix(p.letters());
}

inline DenseMatrix hamiltonian_matrix(const PauliSumHamiltonian &h) {
    if (h.num_qubits() > kMaxHamiltonianQubits) {
        throw std::out_of_range("dense Hamiltonians are limited to 10 qubits");
    }
    const std::size_t dim = std::size_t{1} << h.num_qubits();
    DenseMatrix m(dim, dim);
    for (const auto &t : h.terms()) {
        m += t.coefficient * pauli_string_matrix(t.string);
    }
    return m;
}

inline DenseMatrix exact_evolution_operator(const PauliSumHamiltonian &h, double t) {
    return herm_exp(hamiltonian_matrix(h), t);
}

/// e^{-i H t} |state> from the dense Hermitian exponential.
inline StateVector exact_evolution(const PauliSumHamiltonian &h, double t,
                                   const StateVector &state) {
    if (state.num_qubits() != h.num_qubits()) {
        throw std::invalid_argument("state and Hamiltonian qubit counts differ");
    }
    return StateVector(exact_evolution_operator(h, t).apply(state.vector()));
}

/**
 * Circuit for e^{-i t P}.
 *
 * Each X letter is rotated to Z with H and each Y letter with R_x(pi/2)
 * (undone by R_x(-pi/2)), since R_x(pi/2)^dagger Z R_x(pi/2) = Y. A CNOT
 * ladder accumulates the parity of all non-identity wires on the last one,
 * R_z(2t) applies the phase, and the ladder and basis changes are undone.
 */
inline Circuit string_exp_circuit(const PauliString &p, double t) {
    if (p.is_identity()) {
        throw std::invalid_argument("all-identity string only contributes a global phase");
    }
    const unsigned n = p.size();
    Circuit c(n);
    std::vector<unsigned> active;
    for (unsigned q = 0; q < n; ++q) {
        if (p[q] != 'I') {
            active.push_back(q);
        }
    }
    for (const auto q : active) {
        if (p[q] == 'X') {
            c.add(gates::hadamard(), {q});
        } else if (p[q] == 'Y') {
            c.add(gates::rx(kPi / 2.0), {q});
        }
    }
    for (std::size_t i = 0; i + 1 < active.size(); ++i) {
        c.add(gates::cnot(), {active[i], active[i + 1]});
    }
    c.add(gates::rz(2.0 * t), {active.back()});
    for (std::size_t i = active.size() - 1; i > 0; --i) {
        c.add(gates::cnot(), {active[i - 1], active[i]});
    }
    for (const auto q : active) {
        if (p[q] == 'X') {
            c.add(gates::hadamard(), {q});
        } else if (p[q] == 'Y') {
            c.add(gates::rx(-kPi / 2.0), {q});
        }
    }
    return c;
}

/// One first-order step: prod_l e^{-i c_l P_l dt} in listed term order.
inline Circuit trotter_step_circuit(const PauliSumHamiltonian &h, double dt) {
    Circuit c(h.num_qubits());
    for (const auto &term : h.terms()) {
        if (term.string.is_identity()) {
            continue;
        }
        c.append(string_exp_circuit(term.string, term.coefficient * dt));
    }
    return c;
}

/**
 * N repetitions of the product of term exponentials with step t/N.
 * Identity terms are skipped; they only shift the global phase.
 */
inline StateVector trotter_evolve(const PauliSumHamiltonian &h, double t, unsigned steps,
                                  StateVector state) {
    if (steps < 1) {
        throw std::invalid_argument("Trotter step count must be at least 1");
    }
    if (state.num_qubits() != h.num_qubits()) {
        throw std::invalid_argument("state and Hamiltonian qubit counts differ");
    }
    const Circuit step = trotter_step_circuit(h, t / static_cast<double>(steps));
    for (unsigned i = 0; i < steps; ++i) {
        apply_circuit_inplace(state, step);
    }
    return state;
}

namespace detail {

/// Global phase e^{-i t sum(identity coefficients)} dropped by trotter_evolve.
inline Complex identity_phase(const PauliSumHamiltonian &h, double t) {
    double c = 0.0;
    for (const auto &term : h.terms()) {
        if (term.string.is_identity()) {
            c += term.coefficient;
        }
    }
    return std::polar(1.0, -c * t);
}

} // namespace detail

inline constexpr unsigned kTrotterErrorSamples = 200;
inline constexpr std::uint64_t kTrotterErrorSeed = 0x7A0771E5ULL;

/**
 * Max over 200 seeded random unit states of the 2-norm distance between
 * the Trotterized and exact evolutions.
 */
inline double trotter_error(const PauliSumHamiltonian &h, double t, unsigned steps) {
    const DenseMatrix exact = exact_evolution_operator(h, t);
    const Complex phase = detail::identity_phase(h, t);
    CounterRng rng(kTrotterErrorSeed);
    double worst = 0.0;
    for (unsigned i = 0; i < kTrotterErrorSamples; ++i) {
        const StateVector s = random_state(h.num_qubits(), rng);
        const StateVector approx = trotter_evolve(h, t, steps, s);
        const auto reference = exact.apply(s.vector());
        double d2 = 0.0;
        for (std::size_t x = 0; x < reference.size(); ++x) {
            d2 += std::norm(phase * approx[x] - reference[x]);
        }
        worst = std::max(worst, std::sqrt(d2));
    }
    return worst;
}

} // namespace qubitkit
