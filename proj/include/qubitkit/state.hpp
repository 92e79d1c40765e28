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
 * The n-qubit state vector and its basis-label conventions.
 *
 * Basis indices are big-endian: qubit 0 is the top wire and the most
 * significant bit of the index, so |i_1 ... i_n> has index
 * sum_k 2^{n-k} i_k.
 */
#pragma once

#include "qubitkit/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qubitkit {

using Bits = std::vector<std::uint8_t>;

inline constexpr unsigned kMaxQubits = 30;

inline std::uint64_t binary_to_decimal(std::span<const std::uint8_t> bits) {
    if (bits.size() > 63) {
        throw std::out_of_range("bit string too long");
    }
    std::uint64_t x = 0;
    for (const auto b : bits) {
        if (b > 1) {
            throw std::invalid_argument("bits must be 0 or 1");
        }
        x = (x << 1) | b;
    }
    return x;
}

inline Bits decimal_to_binary(std::uint64_t x, unsigned n) {
    if (n > 63 || (x >> n) != 0) {
        throw std::out_of_range("value does not fit in the requested bit count");
    }
    Bits bits(n);
    for (unsigned k = 0; k < n; ++k) {
        bits[k] = static_cast<std::uint8_t>((x >> (n - 1 - k)) & 1U);
    }
    return bits;
}

inline std::string bits_to_string(std::span<const std::uint8_t> bits) {
    std::string s;
    s.reserve(bits.size());
    for (const auto b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

inline Bits bits_from_string(const std::string &s) {
    Bits bits;
    bits.reserve(s.size());
    for (const char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string may only contain 0 and 1");
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return bits;
}

/// A computational-basis label in both notations.
struct BasisLabel {
    Bits bits;
    std::uint64_t decimal = 0;

    static BasisLabel from_decimal(std::uint64_t x, unsigned n) {
        return {decimal_to_binary(x, n), x};
    }
    static BasisLabel from_bits(Bits b) {
        const auto x = binary_to_decimal(b);
        return {std::move(b), x};
    }
};

/// Polar angle theta in [0, pi] and azimuth phi in [0, 2pi).
struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;
};

/**
 * 2^n complex amplitudes.
 *
 * Normalization is checked by validate(), not enforced on construction,
 * because channel and projection math passes through unnormalized values.
 */
class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(unsigned num_qubits) : num_qubits_(num_qubits) {
        check_qubit_count(num_qubits);
        amps_.assign(std::size_t{1} << num_qubits, Complex{});
        amps_[0] = 1.0;
    }

    explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.size() < 2 || !is_power_of_two(amps_.size())) {
            throw std::invalid_argument("amplitude count must be 2^n with n >= 1");
        }
        num_qubits_ = log2_exact(amps_.size());
        check_qubit_count(num_qubits_);
        for (const auto &a : amps_) {
            if (!is_finite(a)) {
                throw std::invalid_argument("amplitudes must be finite");
            }
        }
    }

    [[nodiscard]] unsigned num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<Complex> mutable_amplitudes() { return amps_; }
    [[nodiscard]] const std::vector<Complex> &vector() const { return amps_; }

    const Complex &operator[](std::size_t i) const { return amps_[i]; }
    Complex &operator[](std::size_t i) { return amps_[i]; }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }
    [[nodiscard]] double norm() const { return std::sqrt(norm_squared()); }

    [[nodiscard]] bool is_normalized(double eps = 1e-9) const {
        return std::abs(norm_squared() - 1.0) <= eps;
    }

    /// Throws when the norm deviates from 1 by more than eps.
    void validate(double eps = 1e-9) const {
        if (!is_normalized(eps)) {
            throw std::domain_error("state vector is not normalized");
        }
    }

    [[nodiscard]] StateVector normalized() const {
        const double n = norm();
        if (n == 0.0) {
            throw std::domain_error("cannot normalize the zero vector");
        }
        StateVector out = *this;
        for (auto &a : out.amps_) {
            a /= n;
        }
        return out;
    }

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    static void check_qubit_count(unsigned n) {
        if (n < 1 || n > kMaxQubits) {
            throw std::out_of_range("qubit count must be in [1, 30]");
        }
    }

    unsigned num_qubits_ = 1;
    std::vector<Complex> amps_;
};

inline StateVector basis_state(unsigned n, std::uint64_t label) {
    StateVector s(n);
    if (n < 64 && (label >> n) != 0) {
        throw std::out_of_range("basis label out of range");
    }
    s[0] = 0.0;
    s[label] = 1.0;
    return s;
}

inline StateVector basis_state(const std::string &bits) {
    return basis_state(static_cast<unsigned>(bits.size()),
                       binary_to_decimal(bits_from_string(bits)));
}

inline StateVector from_bloch(BlochAngles a) {
    if (!(a.theta >= 0.0 && a.theta <= kPi) || !(a.phi >= 0.0 && a.phi < 2.0 * kPi)) {
        throw std::out_of_range("Bloch angles out of range");
    }
    return StateVector({Complex(std::cos(a.theta / 2.0), 0.0),
                        std::polar(std::sin(a.theta / 2.0), a.phi)});
}

/**
 * Inverse of from_bloch up to global phase. At the poles phi is reported
 * as 0.
 */
inline BlochAngles to_bloch(const StateVector &s) {
    if (s.num_qubits() != 1) {
        throw std::invalid_argument("to_bloch requires a single-qubit state");
    }
    s.validate();
    const double r0 = std::abs(s[0]);
    const double r1 = std::abs(s[1]);
    BlochAngles out;
    out.theta = 2.0 * std::atan2(r1, r0);
    if (r0 < 1e-12 || r1 < 1e-12) {
        out.phi = 0.0;
        return out;
    }
    // Strip the phase of alpha_0 so it becomes real non-negative.
    double phi = std::arg(s[1]) - std::arg(s[0]);
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) {
        phi += 2.0 * kPi;
    }
    if (phi >= 2.0 * kPi) {
        phi = 0.0;
    }
    out.phi = phi;
    return out;
}

/// a's qubits become the top wires of the result.
inline StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<Complex> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return StateVector(std::move(out));
}

/// <a|b>, conjugate-linear in a.
inline Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner product of states with different sizes");
    }
    Complex acc{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

inline double fidelity_mod_phase(const StateVector &a, const StateVector &b) {
    return std::min(1.0, std::abs(inner_product(a, b)));
}

/**
 * Rank-1 test of the 2 x 2^{n-1} amplitude matrix whose rows are indexed by
 * the bit of `qubit`: true iff the state factors as (qubit) x (rest).
 */
inline bool is_product_across(const StateVector &s, unsigned qubit, Tolerance tol = {}) {
    if (qubit >= s.num_qubits()) {
        throw std::out_of_range("qubit index out of range");
    }
    const unsigned n = s.num_qubits();
    const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
    std::vector<Complex> row0;
    std::vector<Complex> row1;
    for (std::size_t x = 0; x < s.dim(); ++x) {
        if (x & mask) {
            continue;
        }
        row0.push_back(s[x]);
        row1.push_back(s[x | mask]);
    }
    for (std::size_t i = 0; i < row0.size(); ++i) {
        for (std::size_t j = i + 1; j < row0.size(); ++j) {
            if (std::abs(row0[i] * row1[j] - row0[j] * row1[i]) > tol.eps) {
                return false;
            }
        }
    }
    return true;
}

/// For 2 qubits: |a00 a11 - a01 a10| <= eps.
inline bool is_product_bipartition(const StateVector &s, Tolerance tol = {}) {
    if (s.num_qubits() != 2) {
        throw std::invalid_argument("is_product_bipartition requires two qubits");
    }
    return std::abs(s[0] * s[3] - s[1] * s[2]) <= tol.eps;
}

/// Max-modulus amplitude difference.
inline double max_abs_diff(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("state size mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace qubitkit
