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
 * Dense complex matrices and the reference linear algebra every other
 * module is checked against: Kronecker products, adjoints, unitarity,
 * Hermitian exponentials and Pauli-basis decomposition.
 */
#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qubitkit {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Comparison threshold on max-entry complex modulus differences.
struct Tolerance {
    double eps = 1e-10;

    constexpr Tolerance() = default;
    constexpr explicit Tolerance(double e) : eps(e) {
        if (!(e > 0.0)) {
            throw std::invalid_argument("tolerance must be positive");
        }
    }
};

inline bool is_finite(const Complex &z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

/// log2 of a power of two.
inline unsigned log2_exact(std::size_t x) {
    return static_cast<unsigned>(std::countr_zero(x));
}

/**
 * Row-major dense complex matrix.
 *
 * Construction from user data rejects NaN/Inf; arithmetic results are not
 * re-checked.
 */
class DenseMatrix {
  public:
    DenseMatrix() : DenseMatrix(1, 1) {}

    /// Zero matrix.
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) {
            throw std::invalid_argument("matrix dimensions must be positive");
        }
    }

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) {
            throw std::invalid_argument("matrix dimensions must be positive");
        }
        if (data_.size() != rows * cols) {
            throw std::invalid_argument("entry count does not match dimensions");
        }
        check_finite();
    }

    DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        if (rows_ == 0 || cols_ == 0) {
            throw std::invalid_argument("matrix dimensions must be positive");
        }
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw std::invalid_argument("ragged matrix rows");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
        check_finite();
    }

    static DenseMatrix identity(std::size_t dim) {
        DenseMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static DenseMatrix diagonal(const std::vector<Complex> &diag) {
        DenseMatrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        m.check_finite();
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }
    [[nodiscard]] const std::vector<Complex> &entries() const { return data_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    DenseMatrix &operator+=(const DenseMatrix &o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    DenseMatrix &operator-=(const DenseMatrix &o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }
    DenseMatrix &operator*=(Complex s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix &b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix &b) { return a -= b; }
    friend DenseMatrix operator*(Complex s, DenseMatrix a) { return a *= s; }
    friend DenseMatrix operator*(DenseMatrix a, Complex s) { return a *= s; }
    friend DenseMatrix operator-(DenseMatrix a) { return a *= -1.0; }

    friend DenseMatrix operator*(const DenseMatrix &a, const DenseMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("matrix product dimension mismatch");
        }
        DenseMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    /// Matrix-vector product.
    [[nodiscard]] std::vector<Complex> apply(const std::vector<Complex> &v) const {
        if (v.size() != cols_) {
            throw std::invalid_argument("matrix-vector dimension mismatch");
        }
        std::vector<Complex> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Complex acc{};
            for (std::size_t j = 0; j < cols_; ++j) {
                acc += (*this)(i, j) * v[j];
            }
            out[i] = acc;
        }
        return out;
    }

    [[nodiscard]] Complex trace() const {
        if (!is_square()) {
            throw std::invalid_argument("trace of non-square matrix");
        }
        Complex t{};
        for (std::size_t i = 0; i < rows_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    friend bool operator==(const DenseMatrix &, const DenseMatrix &) = default;

  private:
    void check_finite() const {
        for (const auto &z : data_) {
            if (!is_finite(z)) {
                throw std::invalid_argument("matrix entries must be finite");
            }
        }
    }
    void require_same_shape(const DenseMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument("matrix shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Block (i,j) of the result is a(i,j) * b.
inline DenseMatrix kron(const DenseMatrix &a, const DenseMatrix &b) {
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

inline DenseMatrix dagger(const DenseMatrix &a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

/// Max over entries of |a_ij - b_ij|.
inline double max_abs_diff(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

inline bool approx_equal(const DenseMatrix &a, const DenseMatrix &b, Tolerance tol = {}) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol.eps;
}

/**
 * Compare two matrices after removing a global phase from `b`.
 *
 * The phase is taken from the largest-modulus entry of `a`, so matrices that
 * differ by e^{i phi} compare equal.
 */
inline double phase_aligned_diff(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shape mismatch");
    }
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        if (std::abs(a.entries()[i]) > std::abs(a.entries()[pivot])) {
            pivot = i;
        }
    }
    const Complex pa = a.entries()[pivot];
    const Complex pb = b.entries()[pivot];
    if (std::abs(pb) == 0.0 || std::abs(pa) == 0.0) {
        return max_abs_diff(a, b);
    }
    const Complex phase = (pa / std::abs(pa)) / (pb / std::abs(pb));
    return max_abs_diff(a, phase * b);
}

inline bool is_unitary(const DenseMatrix &a, Tolerance tol = {}) {
    if (!a.is_square()) {
        throw std::invalid_argument("is_unitary requires a square matrix");
    }
    return max_abs_diff(a * dagger(a), DenseMatrix::identity(a.rows())) <= tol.eps;
}

inline bool is_hermitian(const DenseMatrix &a, Tolerance tol = {}) {
    if (!a.is_square()) {
        throw std::invalid_argument("is_hermitian requires a square matrix");
    }
    return max_abs_diff(a, dagger(a)) <= tol.eps;
}

namespace detail {

inline Eigen::MatrixXcd to_eigen(const DenseMatrix &m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    return e;
}

inline DenseMatrix from_eigen(const Eigen::MatrixXcd &e) {
    DenseMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
        for (Eigen::Index c = 0; c < e.cols(); ++c) {
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e(r, c);
        }
    }
    return m;
}

inline Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hermitian_solver(const DenseMatrix &h) {
    if (!is_hermitian(h, Tolerance{1e-9})) {
        throw std::invalid_argument("matrix is not Hermitian");
    }
    // Symmetrize so the solver sees an exactly self-adjoint input.
    Eigen::MatrixXcd e = detail::to_eigen(h);
    Eigen::MatrixXcd sym = 0.5 * (e + e.adjoint());
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(sym);
}

} // namespace detail

/// Ascending eigenvalues of a Hermitian matrix.
inline std::vector<double> hermitian_eigenvalues(const DenseMatrix &h) {
    auto solver = detail::hermitian_solver(h);
    std::vector<double> out(static_cast<std::size_t>(solver.eigenvalues().size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    }
    return out;
}

/**
 * e^{-i h t} for Hermitian h, computed as V diag(e^{-i lambda t}) V^dagger
 * from the eigendecomposition h = V diag(lambda) V^dagger.
 */
inline DenseMatrix herm_exp(const DenseMatrix &h, double t) {
    auto solver = detail::hermitian_solver(h);
    const Eigen::MatrixXcd &v = solver.eigenvectors();
    Eigen::VectorXcd phases(solver.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, -solver.eigenvalues()(i) * t));
    }
    Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();
    return detail::from_eigen(u);
}

inline DenseMatrix pauli_letter_matrix(char letter) {
    const Complex i{0.0, 1.0};
    switch (letter) {
    case 'I':
        return DenseMatrix{{1.0, 0.0}, {0.0, 1.0}};
    case 'X':
        return DenseMatrix{{0.0, 1.0}, {1.0, 0.0}};
    case 'Y':
        return DenseMatrix{{0.0, -i}, {i, 0.0}};
    case 'Z':
        return DenseMatrix{{1.0, 0.0}, {0.0, -1.0}};
    default:
        throw std::invalid_argument(std::string("not a Pauli letter: ") + letter);
    }
}

/// Kronecker product of Pauli letters, leftmost letter on the top wire.
inline DenseMatrix pauli_word_matrix(const std::string &word) {
    if (word.empty()) {
        throw std::invalid_argument("empty Pauli word");
    }
    DenseMatrix m = pauli_letter_matrix(word[0]);
    for (std::size_t k = 1; k < word.size(); ++k) {
        m = kron(m, pauli_letter_matrix(word[k]));
    }
    return m;
}

namespace detail {

inline std::string pauli_word_from_index(std::size_t index, unsigned n) {
    static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
    std::string word(n, 'I');
    for (unsigned k = 0; k < n; ++k) {
        word[n - 1 - k] = letters[(index >> (2 * k)) & 3U];
    }
    return word;
}

} // namespace detail

/**
 * Coefficients h_A = tr(sigma_A^dagger m) / 2^n for all 4^n Pauli words.
 *
 * Each Pauli word has a single nonzero per row, so the trace is accumulated
 * row by row without forming the word matrix.
 */
inline std::map<std::string, Complex> pauli_decompose(const DenseMatrix &m) {
    if (!m.is_square() || !is_power_of_two(m.rows()) || m.rows() < 2) {
        throw std::invalid_argument("pauli_decompose requires a 2^n x 2^n matrix");
    }
    const std::size_t dim = m.rows();
    const unsigned n = log2_exact(dim);
    const Complex i{0.0, 1.0};
    std::map<std::string, Complex> out;
    for (std::size_t w = 0; w < (std::size_t{1} << (2 * n)); ++w) {
        const std::string word = detail::pauli_word_from_index(w, n);
        Complex acc{};
        for (std::size_t r = 0; r < dim; ++r) {
            // Row r of sigma_A: column c = r ^ flips, value = product of letter entries.
            std::size_t c = 0;
            Complex value{1.0, 0.0};
            for (unsigned q = 0; q < n; ++q) {
                const unsigned bit = (r >> (n - 1 - q)) & 1U;
                unsigned out_bit = bit;
                switch (word[q]) {
                case 'X':
                    out_bit = bit ^ 1U;
                    break;
                case 'Y':
                    out_bit = bit ^ 1U;
                    value *= bit == 0 ? -i : i;
                    break;
                case 'Z':
                    value *= bit == 0 ? 1.0 : -1.0;
                    break;
                default:
                    break;
                }
                c |= std::size_t{out_bit} << (n - 1 - q);
            }
            // tr(sigma^dagger m) = sum_r conj(sigma(r,c)) m(r,c)
            acc += std::conj(value) * m(r, c);
        }
        out.emplace(word, acc / static_cast<double>(dim));
    }
    return out;
}

/// Sum of coefficient * word matrix; inverse of pauli_decompose.
inline DenseMatrix pauli_reconstruct(const std::map<std::string, Complex> &coeffs) {
    if (coeffs.empty()) {
        throw std::invalid_argument("no Pauli coefficients");
    }
    const std::size_t n = coeffs.begin()->first.size();
    DenseMatrix out(std::size_t{1} << n, std::size_t{1} << n);
    for (const auto &[word, c] : coeffs) {
        if (word.size() != n) {
            throw std::invalid_argument("Pauli words of unequal length");
        }
        if (c != Complex{}) {
            out += c * pauli_word_matrix(word);
        }
    }
    return out;
}

} // namespace qubitkit
