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
 * Gate catalog. Every gate is a named unitary matrix on k qubits; the first
 * qubit of the gate is the most significant index bit of its matrix.
 */
#pragma once

#include "qubitkit/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qubitkit {

enum class Axis { X, Y, Z };

inline char axis_letter(Axis a) {
    switch (a) {
    case Axis::X:
        return 'X';
    case Axis::Y:
        return 'Y';
    default:
        return 'Z';
    }
}

/**
 * A k-qubit unitary with its mnemonic and the parameters it was built from.
 * Parameters are kept as given; two gates are equal iff their matrices are.
 */
class GateDef {
  public:
    GateDef(std::string name, DenseMatrix matrix, std::vector<double> params = {})
        : name_(std::move(name)), matrix_(std::move(matrix)), params_(std::move(params)) {
        if (!matrix_.is_square() || !is_power_of_two(matrix_.rows()) || matrix_.rows() < 2) {
            throw std::invalid_argument("gate matrix must be 2^k x 2^k with k >= 1");
        }
        if (!is_unitary(matrix_, Tolerance{1e-9})) {
            throw std::invalid_argument("gate matrix is not unitary: " + name_);
        }
        arity_ = log2_exact(matrix_.rows());
    }

    [[nodiscard]] const std::string &name() const { return name_; }
    [[nodiscard]] unsigned arity() const { return arity_; }
    [[nodiscard]] const DenseMatrix &matrix() const { return matrix_; }
    [[nodiscard]] const std::vector<double> &params() const { return params_; }

  private:
    std::string name_;
    unsigned arity_ = 1;
    DenseMatrix matrix_;
    std::vector<double> params_;
};

namespace gates {

inline GateDef identity(unsigned k = 1) {
    return GateDef("i", DenseMatrix::identity(std::size_t{1} << k));
}

inline GateDef pauli(Axis a) {
    const char letter = axis_letter(a);
    return GateDef(std::string(1, static_cast<char>(letter - 'A' + 'a')),
                   pauli_letter_matrix(letter));
}

inline GateDef x() { return pauli(Axis::X); }
inline GateDef y() { return pauli(Axis::Y); }
inline GateDef z() { return pauli(Axis::Z); }

inline GateDef hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return GateDef("h", DenseMatrix{{r, r}, {r, -r}});
}

/// P(phi) = diag(1, e^{i phi}).
inline GateDef phase(double phi) {
    return GateDef("p", DenseMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, phi)}}, {phi});
}

inline GateDef s() {
    return GateDef("s", DenseMatrix{{1.0, 0.0}, {0.0, Complex(0.0, 1.0)}});
}

/// T = P(pi/4).
inline GateDef t() {
    return GateDef("t", DenseMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, kPi / 4.0)}});
}

/// R_l|j> = e^{2 pi i j / 2^l}|j>.
inline GateDef r_l(int l) {
    if (l < 1 || l > 62) {
        throw std::invalid_argument("R_l requires 1 <= l <= 62");
    }
    const double phi = 2.0 * kPi / std::ldexp(1.0, l);
    return GateDef("rl", DenseMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, phi)}},
                   {static_cast<double>(l)});
}

/// cos(angle/2) I - i sin(angle/2) (n . sigma), n a unit vector.
inline GateDef rotation_n(double nx, double ny, double nz, double angle) {
    const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (!(std::abs(len - 1.0) <= 1e-9)) {
        throw std::invalid_argument("rotation axis must be a unit vector");
    }
    const double c = std::cos(angle / 2.0);
    const double sn = std::sin(angle / 2.0);
    const Complex i{0.0, 1.0};
    DenseMatrix m = c * DenseMatrix::identity(2) -
                    i * sn *
                        (nx * pauli_letter_matrix('X') + ny * pauli_letter_matrix('Y') +
                         nz * pauli_letter_matrix('Z'));
    return GateDef("rn", std::move(m), {nx, ny, nz, angle});
}

inline GateDef rotation(Axis a, double angle) {
    const double c = std::cos(angle / 2.0);
    const double sn = std::sin(angle / 2.0);
    const Complex i{0.0, 1.0};
    switch (a) {
    case Axis::X:
        return GateDef("rx", DenseMatrix{{c, -i * sn}, {-i * sn, c}}, {angle});
    case Axis::Y:
        return GateDef("ry", DenseMatrix{{c, -sn}, {sn, c}}, {angle});
    default:
        return GateDef("rz",
                       DenseMatrix{{std::polar(1.0, -angle / 2.0), 0.0},
                                   {0.0, std::polar(1.0, angle / 2.0)}},
                       {angle});
    }
}

inline GateDef rx(double angle) { return rotation(Axis::X, angle); }
inline GateDef ry(double angle) { return rotation(Axis::Y, angle); }
inline GateDef rz(double angle) { return rotation(Axis::Z, angle); }

/**
 * Generic single-qubit unitary
 * e^{i gamma} [[cos(theta/2), -e^{i lambda} sin(theta/2)],
 *              [e^{i phi} sin(theta/2), e^{i(phi+lambda)} cos(theta/2)]].
 */
inline GateDef u(double theta, double phi, double lambda, double gamma = 0.0) {
    const double c = std::cos(theta / 2.0);
    const double sn = std::sin(theta / 2.0);
    const Complex g = std::polar(1.0, gamma);
    DenseMatrix m{{g * c, -g * std::polar(sn, lambda)},
                  {g * std::polar(sn, phi), g * std::polar(c, phi + lambda)}};
    return GateDef("u", std::move(m), {theta, phi, lambda, gamma});
}

/**
 * Controlled gate with the control as the new top wire. active = 1 gives
 * block-diag(I, U); active = 0 gives block-diag(U, I).
 */
inline GateDef controlled(const GateDef &g, int active = 1) {
    if (active != 0 && active != 1) {
        throw std::invalid_argument("control activation must be 0 or 1");
    }
    const std::size_t d = g.matrix().rows();
    DenseMatrix m(2 * d, 2 * d);
    const std::size_t u_off = active == 1 ? d : 0;
    const std::size_t i_off = active == 1 ? 0 : d;
    for (std::size_t r = 0; r < d; ++r) {
        m(i_off + r, i_off + r) = 1.0;
        for (std::size_t c = 0; c < d; ++c) {
            m(u_off + r, u_off + c) = g.matrix()(r, c);
        }
    }
    std::string name = (active == 1 ? "c" : "c0") + g.name();
    return GateDef(std::move(name), std::move(m), g.params());
}

inline GateDef cnot() {
    return GateDef("cnot", DenseMatrix{{1.0, 0.0, 0.0, 0.0},
                                       {0.0, 1.0, 0.0, 0.0},
                                       {0.0, 0.0, 0.0, 1.0},
                                       {0.0, 0.0, 1.0, 0.0}});
}

inline GateDef cz() { return GateDef("cz", DenseMatrix::diagonal({1.0, 1.0, 1.0, -1.0})); }

inline GateDef swap() {
    return GateDef("swap", DenseMatrix{{1.0, 0.0, 0.0, 0.0},
                                       {0.0, 0.0, 1.0, 0.0},
                                       {0.0, 1.0, 0.0, 0.0},
                                       {0.0, 0.0, 0.0, 1.0}});
}

namespace detail {

/// Permutation matrix sending basis index x to f(x).
template <typename F> DenseMatrix permutation_matrix(std::size_t dim, F f) {
    DenseMatrix m(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        m(f(x), x) = 1.0;
    }
    return m;
}

} // namespace detail

/// |c a b> -> |c b a> when c = 1.
inline GateDef cswap() {
    return GateDef("cswap", detail::permutation_matrix(8, [](std::size_t x) {
                       if ((x & 4U) == 0) {
                           return x;
                       }
                       const std::size_t a = (x >> 1) & 1U;
                       const std::size_t b = x & 1U;
                       return std::size_t{4} | (b << 1) | a;
                   }));
}

/// |i j k> -> |i j (k xor ij)>.
inline GateDef toffoli() {
    return GateDef("ccnot", detail::permutation_matrix(8, [](std::size_t x) {
                       return (x & 6U) == 6U ? x ^ 1U : x;
                   }));
}

/// One of cnot, cz, swap, cswap, toffoli (alias ccnot).
inline GateDef named_gate(const std::string &name) {
    if (name == "cnot") {
        return cnot();
    }
    if (name == "cz") {
        return cz();
    }
    if (name == "swap") {
        return swap();
    }
    if (name == "cswap") {
        return cswap();
    }
    if (name == "toffoli" || name == "ccnot") {
        return toffoli();
    }
    throw std::invalid_argument("unknown named gate: " + name);
}

inline GateDef adjoint(const GateDef &g) {
    return GateDef(g.name() + "_dg", dagger(g.matrix()), g.params());
}

/// g^p by repeated squaring.
inline GateDef power(const GateDef &g, std::uint64_t p) {
    DenseMatrix result = DenseMatrix::identity(g.matrix().rows());
    DenseMatrix base = g.matrix();
    while (p > 0) {
        if (p & 1U) {
            result = result * base;
        }
        base = base * base;
        p >>= 1U;
    }
    return GateDef(g.name() + "^", std::move(result), g.params());
}

/// Every fixed or sampled-parameter gate in the catalog, for exhaustive checks.
inline std::vector<GateDef> catalog() {
    std::vector<GateDef> out = {
        identity(),  x(),     y(),       z(),        hadamard(),    s(),        t(),
        phase(0.7),  r_l(1),  r_l(2),    r_l(5),     rx(0.3),       ry(-1.2),   rz(2.5),
        rotation_n(0.6, 0.0, 0.8, 1.1),  u(0.4, 1.3, -0.2, 0.5),    cnot(),     cz(),
        swap(),      cswap(), toffoli(), controlled(hadamard()),    controlled(rz(0.9), 0),
    };
    return out;
}

} // namespace gates
} // namespace qubitkit
