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
 * Textbook algorithms on top of the circuit engine: XOR oracles, Deutsch and
 * Deutsch-Jozsa, Bell states, superdense coding, teleportation, the Hadamard
 * test, phase estimation, the swap test, the QFT and the N = 15 instance of
 * Shor's period finding.
 */
#pragma once

#include "qubitkit/circuit.hpp"
#include "qubitkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qubitkit {

/// Thrown when a Deutsch-Jozsa table is neither constant nor balanced.
class PromiseViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Truth table of f : {0,1}^n -> {0,1}, indexed by x in big-endian.
class BooleanOracle {
  public:
    BooleanOracle(unsigned n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
        if (n < 1 || n > 16) {
            throw std::invalid_argument("oracle input width must be in [1, 16]");
        }
        if (table_.size() != (std::size_t{1} << n)) {
            throw std::invalid_argument("oracle table length must be 2^n");
        }
        for (const auto v : table_) {
            if (v > 1) {
                throw std::invalid_argument("oracle values must be 0 or 1");
            }
        }
    }

    /// From a string of 2^n characters '0'/'1'.
    static BooleanOracle from_string(const std::string &bits) {
        if (bits.size() < 2 || !is_power_of_two(bits.size())) {
            throw std::invalid_argument("oracle table length must be a power of two >= 2");
        }
        return BooleanOracle(log2_exact(bits.size()), bits_from_string(bits));
    }

    [[nodiscard]] unsigned n() const { return n_; }
    [[nodiscard]] const std::vector<std::uint8_t> &table() const { return table_; }
    [[nodiscard]] unsigned operator()(std::size_t x) const { return table_.at(x); }

    [[nodiscard]] bool is_constant() const {
        return std::all_of(table_.begin(), table_.end(),
                           [&](std::uint8_t v) { return v == table_[0]; });
    }
    [[nodiscard]] bool is_balanced() const {
        const auto ones = std::count(table_.begin(), table_.end(), std::uint8_t{1});
        return static_cast<std::size_t>(ones) * 2 == table_.size();
    }

  private:
    unsigned n_;
    std::vector<std::uint8_t> table_;
};

enum class OracleVerdict { Constant, Balanced };

inline const char *to_string(OracleVerdict v) {
    return v == OracleVerdict::Constant ? "constant" : "balanced";
}

/// |x>|j> -> |x>|j xor f(x)>, output wire last.
inline GateDef oracle_unitary(const BooleanOracle &f) {
    const std::size_t dim = std::size_t{2} << f.n();
    DenseMatrix m(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t x = col >> 1;
        m(col ^ f(x), col) = 1.0;
    }
    std::vector<double> params;
    return GateDef("oracle", std::move(m), std::move(params));
}

struct DeutschJozsaResult {
    OracleVerdict verdict;
    /// Probability that the upper register reads all zeros.
    double p_all_zero;
};

/// H on all wires, U_f, H on the inputs; starts from |0...0>|1>.
inline Circuit deutsch_jozsa_circuit(const BooleanOracle &f) {
    const unsigned n = f.n();
    Circuit c(n + 1);
    c.add(gates::x(), {n});
    for (unsigned q = 0; q <= n; ++q) {
        c.add(gates::hadamard(), {q});
    }
    std::vector<unsigned> all(n + 1);
    std::iota(all.begin(), all.end(), 0U);
    c.add(oracle_unitary(f), all);
    for (unsigned q = 0; q < n; ++q) {
        c.add(gates::hadamard(), {q});
    }
    return c;
}

/**
 * Exact-probability Deutsch-Jozsa. Throws PromiseViolation when the table is
 * neither constant nor balanced.
 */
inline DeutschJozsaResult deutsch_jozsa_run(const BooleanOracle &f) {
    if (!f.is_constant() && !f.is_balanced()) {
        throw PromiseViolation("oracle is neither constant nor balanced");
    }
    const StateVector out = apply_circuit(StateVector(f.n() + 1), deutsch_jozsa_circuit(f));
    std::vector<unsigned> upper(f.n());
    std::iota(upper.begin(), upper.end(), 0U);
    const double p0 = marginal_distribution(out, upper)[0];
    if (std::abs(p0 - 1.0) <= 1e-9) {
        return {OracleVerdict::Constant, p0};
    }
    if (std::abs(p0) <= 1e-9) {
        return {OracleVerdict::Balanced, p0};
    }
    throw std::logic_error("Deutsch-Jozsa branch probability is neither 0 nor 1");
}

inline OracleVerdict deutsch_jozsa(const BooleanOracle &f) { return deutsch_jozsa_run(f).verdict; }

inline OracleVerdict deutsch(const BooleanOracle &f) {
    if (f.n() != 1) {
        throw std::invalid_argument("Deutsch's algorithm takes a one-bit oracle");
    }
    return deutsch_jozsa(f);
}

struct BellLabel {
    unsigned i = 0;
    unsigned j = 0;
};

/// Prepares |i j> then applies H on wire 0 and CNOT(0 -> 1).
inline Circuit bell_circuit(BellLabel label) {
    if (label.i > 1 || label.j > 1) {
        throw std::invalid_argument("Bell labels are bits");
    }
    Circuit c(2);
    if (label.i) {
        c.add(gates::x(), {0});
    }
    if (label.j) {
        c.add(gates::x(), {1});
    }
    c.add(gates::hadamard(), {0});
    c.add(gates::cnot(), {0, 1});
    return c;
}

/// (|0 j> + (-1)^i |1 (1-j)>) / sqrt 2.
inline StateVector bell_state(BellLabel label) {
    return apply_circuit(StateVector(2), bell_circuit(label));
}

/**
 * Encodes (b1, b2) into the first half of |beta_00> with X^{b2} then Z^{b1},
 * decodes with CNOT and H, and returns the measured bits.
 */
inline std::pair<unsigned, unsigned> superdense(unsigned b1, unsigned b2) {
    if (b1 > 1 || b2 > 1) {
        throw std::invalid_argument("superdense coding sends two bits");
    }
    StateVector s = bell_state({0, 0});
    if (b2) {
        apply_gate_inplace(s, {gates::x(), {0}});
    }
    if (b1) {
        apply_gate_inplace(s, {gates::z(), {0}});
    }
    apply_gate_inplace(s, {gates::cnot(), {0, 1}});
    apply_gate_inplace(s, {gates::hadamard(), {0}});
    // The decoded state is a basis state up to phase.
    const auto probs = probabilities(s);
    const auto best = static_cast<std::size_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    if (std::abs(probs[best] - 1.0) > 1e-9) {
        throw std::logic_error("superdense decoding did not yield a basis state");
    }
    const StateVector expected = basis_state(2, best);
    if (std::abs(fidelity_mod_phase(s, expected) - 1.0) > 1e-9) {
        throw std::logic_error("superdense decoding lost fidelity");
    }
    return {static_cast<unsigned>(best >> 1), static_cast<unsigned>(best & 1U)};
}

struct TeleportResult {
    StateVector received;
    unsigned m1 = 0;
    unsigned m2 = 0;
    double branch_probability = 0.0;
};

namespace detail {

inline StateVector teleport_premeasure(const StateVector &q) {
    if (q.num_qubits() != 1) {
        throw std::invalid_argument("teleportation sends one qubit");
    }
    q.validate();
    StateVector s = tensor(q, bell_state({0, 0}));
    apply_gate_inplace(s, {gates::cnot(), {0, 1}});
    apply_gate_inplace(s, {gates::hadamard(), {0}});
    return s;
}

inline TeleportResult teleport_finish(const MeasurementOutcome &m) {
    StateVector s = m.post_state;
    const unsigned m1 = m.bits[0];
    const unsigned m2 = m.bits[1];
    if (m2) {
        apply_gate_inplace(s, {gates::x(), {2}});
    }
    if (m1) {
        apply_gate_inplace(s, {gates::z(), {2}});
    }
    // Wires 0 and 1 are now the basis state |m1 m2>; read off wire 2.
    const std::size_t base = (std::size_t{m1} << 2) | (std::size_t{m2} << 1);
    StateVector received({s[base], s[base | 1U]});
    return {received.normalized(), m1, m2, m.probability};
}

} // namespace detail

/// CNOT, H, measure wires 0 and 1, then X^{m2} and Z^{m1} on wire 2.
inline TeleportResult teleport(const StateVector &q, CounterRng &rng) {
    const StateVector s = detail::teleport_premeasure(q);
    const std::vector<unsigned> measured{0, 1};
    return detail::teleport_finish(measure_subset(s, measured, rng));
}

/// The same protocol with the measurement outcome fixed to (m1, m2).
inline TeleportResult teleport_branch(const StateVector &q, unsigned m1, unsigned m2) {
    const StateVector s = detail::teleport_premeasure(q);
    const std::vector<unsigned> measured{0, 1};
    return detail::teleport_finish(project(s, measured, (std::size_t{m1} << 1) | m2));
}

struct ProbabilityPair {
    double p0 = 0.0;
    double p1 = 0.0;
};

/**
 * Hadamard test with the control on wire 0.
 *
 * Real variant prepares the control in |+>, giving P0 = (1 + Re<Q|U|Q>)/2.
 * Imaginary variant prepares (|0> - i|1>)/sqrt 2 via H then P(-pi/2); by
 * direct evaluation P0 = (1 + Im<Q|U|Q>)/2.
 */
inline ProbabilityPair hadamard_test(const GateDef &u, const StateVector &q, bool imaginary) {
    if (u.arity() != q.num_qubits()) {
        throw std::invalid_argument("gate arity does not match the target state");
    }
    StateVector s = tensor(StateVector(1), q);
    apply_gate_inplace(s, {gates::hadamard(), {0}});
    if (imaginary) {
        apply_gate_inplace(s, {gates::phase(-kPi / 2.0), {0}});
    }
    std::vector<unsigned> wires(u.arity() + 1);
    std::iota(wires.begin(), wires.end(), 0U);
    apply_gate_inplace(s, gates::controlled(u), wires);
    apply_gate_inplace(s, {gates::hadamard(), {0}});
    const double p0 = marginal(s, 0, 0);
    const double p1 = marginal(s, 0, 1);
    return {p0, p1};
}

/// Swap test with the control on wire 0, simulated in full.
inline ProbabilityPair swap_test(const StateVector &t1, const StateVector &t2) {
    if (t1.num_qubits() != t2.num_qubits()) {
        throw std::invalid_argument("swap test needs states of equal size");
    }
    t1.validate();
    t2.validate();
    const unsigned k = t1.num_qubits();
    StateVector s = tensor(StateVector(1), tensor(t1, t2));
    apply_gate_inplace(s, {gates::hadamard(), {0}});
    for (unsigned w = 0; w < k; ++w) {
        apply_gate_inplace(s, {gates::cswap(), {0, 1 + w, 1 + k + w}});
    }
    apply_gate_inplace(s, {gates::hadamard(), {0}});
    return {marginal(s, 0, 0), marginal(s, 0, 1)};
}

/// QFT[y][x] = e^{2 pi i x y / 2^n} / sqrt(2^n).
inline DenseMatrix qft_matrix(unsigned n) {
    if (n < 1 || n > kMaxDenseQubits) {
        throw std::out_of_range("qft_matrix supports 1..12 qubits");
    }
    const std::size_t dim = std::size_t{1} << n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    DenseMatrix m(dim, dim);
    for (std::size_t y = 0; y < dim; ++y) {
        for (std::size_t x = 0; x < dim; ++x) {
            // Reduce x*y mod 2^n before scaling to keep the angle small.
            const std::size_t e = (x * y) & (dim - 1);
            m(y, x) = std::polar(scale, 2.0 * kPi * static_cast<double>(e) /
                                            static_cast<double>(dim));
        }
    }
    return m;
}

/**
 * H on wire j followed by controlled-R_{k-j+1} from each lower wire k,
 * for j = 0..n-1, then SWAPs reversing the wire order.
 */
inline Circuit qft(unsigned n) {
    if (n < 1) {
        throw std::invalid_argument("QFT needs at least one qubit");
    }
    Circuit c(n);
    for (unsigned j = 0; j < n; ++j) {
        c.add(gates::hadamard(), {j});
        for (unsigned k = j + 1; k < n; ++k) {
            c.add(gates::controlled(gates::r_l(static_cast<int>(k - j + 1))), {k, j});
        }
    }
    for (unsigned j = 0; j < n / 2; ++j) {
        c.add(gates::swap(), {j, n - 1 - j});
    }
    return c;
}

inline Circuit iqft(unsigned n) { return inverse(qft(n)); }

struct PhaseEstimate {
    double theta = 0.0;
    std::uint64_t outcome = 0;
    /// Exact distribution over ancilla outcomes.
    std::vector<double> distribution;
    Histogram histogram;
};

/**
 * m ancillas on the top wires, eigenstate below. Ancilla k controls
 * U^{2^{m-1-k}}; the inverse QFT on the ancillas is followed by `shots`
 * samples, and the most frequent outcome y maps to 2 pi y / 2^m.
 */
inline PhaseEstimate phase_estimate(const GateDef &u, const StateVector &eigenstate, unsigned m,
                                    std::uint64_t shots, std::uint64_t seed) {
    if (m < 1 || m > 16) {
        throw std::invalid_argument("ancilla count must be in [1, 16]");
    }
    if (u.arity() != eigenstate.num_qubits()) {
        throw std::invalid_argument("gate arity does not match the eigenstate");
    }
    eigenstate.validate();
    {
        StateVector image = eigenstate;
        apply_gate_inplace(image, u, [&] {
            std::vector<unsigned> w(u.arity());
            std::iota(w.begin(), w.end(), 0U);
            return w;
        }());
        const Complex lambda = inner_product(eigenstate, image);
        double residual = 0.0;
        for (std::size_t i = 0; i < image.dim(); ++i) {
            residual += std::norm(image[i] - lambda * eigenstate[i]);
        }
        if (std::abs(std::abs(lambda) - 1.0) > 1e-6 || std::sqrt(residual) > 1e-6) {
            throw std::domain_error("state is not an eigenstate of the gate");
        }
    }
    const unsigned k = u.arity();
    StateVector s = tensor(StateVector(m), eigenstate);
    for (unsigned a = 0; a < m; ++a) {
        apply_gate_inplace(s, {gates::hadamard(), {a}});
    }
    for (unsigned a = 0; a < m; ++a) {
        std::vector<unsigned> wires{a};
        for (unsigned w = 0; w < k; ++w) {
            wires.push_back(m + w);
        }
        const GateDef cu = gates::controlled(gates::power(u, std::uint64_t{1} << (m - 1 - a)));
        apply_gate_inplace(s, cu, wires);
    }
    Circuit full(m + k);
    std::vector<unsigned> ancillas(m);
    std::iota(ancillas.begin(), ancillas.end(), 0U);
    full.append(iqft(m), ancillas);
    apply_circuit_inplace(s, full);

    PhaseEstimate out;
    out.distribution = marginal_distribution(s, ancillas);
    out.histogram = sample(s, ancillas, ShotConfig(shots, seed));
    std::uint64_t best_count = 0;
    for (const auto &[bits, count] : out.histogram) {
        if (count > best_count) {
            best_count = count;
            out.outcome = binary_to_decimal(bits_from_string(bits));
        }
    }
    out.theta = 2.0 * kPi * static_cast<double>(out.outcome) / std::ldexp(1.0, static_cast<int>(m));
    return out;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1U) {
            result = static_cast<std::uint64_t>((static_cast<unsigned __int128>(result) * base) % mod);
        }
        base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % mod);
        exp >>= 1U;
    }
    return result;
}

struct PeriodResult {
    std::uint64_t period = 0;
    /// r odd, or a^{r/2} = -1 mod N: the period yields no factors.
    bool method_failure = false;
    std::string reason;
};

/// Smallest r >= 1 with a^r = 1 mod N, by brute force.
inline PeriodResult period_classical(std::uint64_t a, std::uint64_t n) {
    if (n < 2) {
        throw std::invalid_argument("modulus must be at least 2");
    }
    if (std::gcd(a, n) != 1) {
        throw std::invalid_argument("a and N must be coprime");
    }
    PeriodResult out;
    std::uint64_t v = a % n;
    std::uint64_t r = 1;
    while (v != 1 % n) {
        v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * a) % n);
        ++r;
    }
    out.period = r;
    if (r % 2 == 1) {
        out.method_failure = true;
        out.reason = "period is odd";
    } else if (pow_mod(a, r / 2, n) == n - 1) {
        out.method_failure = true;
        out.reason = "a^(r/2) = -1 mod N";
    }
    return out;
}

struct ShorResult {
    std::uint64_t a = 0;
    /// Residue a^x mod 15 observed on the lower register.
    std::uint64_t residue = 0;
    /// Exact distribution of the upper register after the inverse QFT (16 entries).
    std::vector<double> distribution;
    /// Upper-register amplitudes after the inverse QFT, lower register factored out.
    std::vector<Complex> upper_amplitudes;
    std::optional<std::uint64_t> period;
    std::vector<std::uint64_t> factors;
    bool method_failure = false;
    std::string reason;
};

namespace detail {

inline constexpr std::uint64_t kShorModulus = 15;
inline constexpr unsigned kShorRegister = 4;

/// |x>|y> -> |x>|y xor (a^x mod 15)> on 4 + 4 wires.
inline GateDef shor15_oracle(std::uint64_t a) {
    const std::size_t dim = 256;
    DenseMatrix m(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t x = col >> 4;
        const std::size_t y = col & 15U;
        const std::size_t fx = pow_mod(a, x, kShorModulus);
        m((x << 4) | (y ^ fx), col) = 1.0;
    }
    return GateDef("oracle", std::move(m));
}

} // namespace detail

/**
 * Shor's period finding for N = 15.
 *
 * H^{x4} on the upper register, the modular oracle, a measurement of the
 * lower register (forced to `conditioned_residue` when given, otherwise
 * sampled with `seed`), then the inverse QFT on the upper register.
 * Post-processing: every outcome y with nonzero probability proposes
 * r = 16 / gcd(y, 16); the smallest even r with a^r = 1 and a^{r/2} != -1
 * (mod 15) is kept and the factors are gcd(a^{r/2} +- 1, 15).
 */
inline ShorResult shor15(std::uint64_t a, std::optional<std::uint64_t> conditioned_residue,
                         std::uint64_t seed) {
    using detail::kShorModulus;
    if (a < 2 || a >= kShorModulus || std::gcd(a, kShorModulus) != 1) {
        throw std::invalid_argument("a must be in [2, 14] and coprime to 15");
    }
    StateVector s(8);
    for (unsigned q = 0; q < 4; ++q) {
        apply_gate_inplace(s, {gates::hadamard(), {q}});
    }
    apply_gate_inplace(s, detail::shor15_oracle(a), std::vector<unsigned>{0, 1, 2, 3, 4, 5, 6, 7});

    const std::vector<unsigned> lower{4, 5, 6, 7};
    MeasurementOutcome m = [&] {
        if (conditioned_residue) {
            const auto dist = marginal_distribution(s, lower);
            if (*conditioned_residue >= 16 || dist[*conditioned_residue] < 1e-12) {
                throw std::invalid_argument("residue " + std::to_string(*conditioned_residue) +
                                            " does not occur for a = " + std::to_string(a));
            }
            return project(s, lower, *conditioned_residue);
        }
        CounterRng rng(seed);
        return measure_subset(s, lower, rng);
    }();
    s = std::move(m.post_state);
    Circuit inv(8);
    const std::vector<unsigned> upper{0, 1, 2, 3};
    inv.append(iqft(4), upper);
    apply_circuit_inplace(s, inv);

    ShorResult out;
    out.a = a;
    out.residue = binary_to_decimal(m.bits);
    out.distribution = marginal_distribution(s, upper);
    out.upper_amplitudes.resize(16);
    for (std::size_t x = 0; x < 16; ++x) {
        out.upper_amplitudes[x] = s[(x << 4) | out.residue];
    }

    std::optional<std::uint64_t> best;
    for (std::uint64_t y = 0; y < 16; ++y) {
        if (out.distribution[y] < 1e-12) {
            continue;
        }
        const std::uint64_t r = 16 / std::gcd(y, std::uint64_t{16});
        if (r % 2 != 0 || pow_mod(a, r, kShorModulus) != 1 ||
            pow_mod(a, r / 2, kShorModulus) == kShorModulus - 1) {
            continue;
        }
        if (!best || r < *best) {
            best = r;
        }
    }
    if (!best) {
        out.method_failure = true;
        out.reason = "no outcome yields an even period with a^(r/2) != -1 mod 15";
        return out;
    }
    out.period = best;
    const std::uint64_t half = pow_mod(a, *best / 2, kShorModulus);
    std::set<std::uint64_t> f{std::gcd(half + 1, kShorModulus),
                              std::gcd(half + kShorModulus - 1, kShorModulus)};
    out.factors.assign(f.begin(), f.end());
    return out;
}

} // namespace qubitkit
