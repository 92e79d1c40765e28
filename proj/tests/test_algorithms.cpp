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


#include "test_util.hpp"

#include "qubitkit/algorithms.hpp"

#include <gtest/gtest.h>

#include <bitset>

namespace {

using namespace qubitkit;
using qktest::ket;
using qktest::kInvSqrt2;

const Complex I1{0.0, 1.0};

std::vector<std::uint8_t> table_from_mask(std::uint64_t mask, unsigned n) {
    std::vector<std::uint8_t> t(std::size_t{1} << n);
    for (std::size_t x = 0; x < t.size(); ++x) {
        t[x] = static_cast<std::uint8_t>((mask >> x) & 1U);
    }
    return t;
}

TEST(BooleanOracle, Validation) {
    EXPECT_THROW(BooleanOracle(2, {0, 1, 1}), std::invalid_argument);
    EXPECT_THROW(BooleanOracle(1, {0, 2}), std::invalid_argument);
    EXPECT_THROW(BooleanOracle(0, {0}), std::invalid_argument);
    EXPECT_THROW((void)BooleanOracle::from_string("011"), std::invalid_argument);
    const auto f = BooleanOracle::from_string("0110");
    EXPECT_EQ(f.n(), 2u);
    EXPECT_TRUE(f.is_balanced());
    EXPECT_FALSE(f.is_constant());
}

TEST(OracleUnitary, Examples) {
    EXPECT_EQ(oracle_unitary(BooleanOracle(2, {0, 0, 0, 0})).matrix(), DenseMatrix::identity(8));
    EXPECT_EQ(oracle_unitary(BooleanOracle(1, {0, 1})).matrix(), gates::cnot().matrix());
}

TEST(OracleUnitary, PermutationInvolutionForAllSmallTables) {
    for (unsigned n = 1; n <= 3; ++n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1U << n)); ++mask) {
            const BooleanOracle f(n, table_from_mask(mask, n));
            const auto u = oracle_unitary(f).matrix();
            for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
                for (unsigned j = 0; j < 2; ++j) {
                    const std::size_t col = (x << 1) | j;
                    const std::size_t row = (x << 1) | (j ^ f(x));
                    ASSERT_EQ(u(row, col), Complex(1.0));
                }
            }
            double ones = 0;
            for (const auto &e : u.entries()) {
                ones += std::abs(e);
            }
            ASSERT_EQ(ones, static_cast<double>(u.rows()));
            ASSERT_EQ(u * u, DenseMatrix::identity(u.rows()));
        }
    }
}

TEST(Deutsch, AllOneBitFunctions) {
    EXPECT_EQ(deutsch(BooleanOracle(1, {0, 0})), OracleVerdict::Constant);
    EXPECT_EQ(deutsch(BooleanOracle(1, {0, 1})), OracleVerdict::Balanced);
    EXPECT_EQ(deutsch(BooleanOracle(1, {1, 1})), OracleVerdict::Constant);
    EXPECT_EQ(deutsch(BooleanOracle(1, {1, 0})), OracleVerdict::Balanced);
    EXPECT_THROW((void)deutsch(BooleanOracle(2, {0, 0, 0, 0})), std::invalid_argument);
}

TEST(DeutschJozsa, Examples) {
    const auto c = deutsch_jozsa_run(BooleanOracle(3, std::vector<std::uint8_t>(8, 1)));
    EXPECT_EQ(c.verdict, OracleVerdict::Constant);
    EXPECT_NEAR(c.p_all_zero, 1.0, 1e-9);
    std::vector<std::uint8_t> parity(8);
    for (std::size_t x = 0; x < 8; ++x) {
        parity[x] = static_cast<std::uint8_t>(std::bitset<3>(x).count() % 2);
    }
    const auto b = deutsch_jozsa_run(BooleanOracle(3, parity));
    EXPECT_EQ(b.verdict, OracleVerdict::Balanced);
    EXPECT_NEAR(b.p_all_zero, 0.0, 1e-9);
}

TEST(DeutschJozsa, ExhaustiveDeterminism) {
    for (unsigned n = 1; n <= 3; ++n) {
        int checked = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1U << n)); ++mask) {
            const BooleanOracle f(n, table_from_mask(mask, n));
            const auto ones = std::bitset<64>(mask).count();
            const bool constant = ones == 0 || ones == (1U << n);
            const bool balanced = ones * 2 == (1U << n);
            if (!constant && !balanced) {
                EXPECT_THROW((void)deutsch_jozsa(f), PromiseViolation);
                continue;
            }
            const auto r = deutsch_jozsa_run(f);
            EXPECT_EQ(r.verdict, constant ? OracleVerdict::Constant : OracleVerdict::Balanced);
            EXPECT_NEAR(r.p_all_zero, constant ? 1.0 : 0.0, 1e-9);
            ++checked;
        }
        const int balanced_count = n == 1 ? 2 : n == 2 ? 6 : 70;
        EXPECT_EQ(checked, 2 + balanced_count);
    }
}

TEST(Bell, StatesAndBasis) {
    EXPECT_LE(max_abs_diff(bell_state({0, 0}), ket({kInvSqrt2, 0, 0, kInvSqrt2})), 1e-15);
    EXPECT_LE(max_abs_diff(bell_state({0, 1}), ket({0, kInvSqrt2, kInvSqrt2, 0})), 1e-15);
    std::vector<StateVector> b;
    for (unsigned i = 0; i < 2; ++i) {
        for (unsigned j = 0; j < 2; ++j) {
            const auto s = bell_state({i, j});
            // (|0 j> + (-1)^i |1 (1-j)>) / sqrt 2
            std::vector<Complex> e(4);
            e[j] = kInvSqrt2;
            e[2 + (1 - j)] = (i ? -1.0 : 1.0) * kInvSqrt2;
            EXPECT_LE(max_abs_diff(s, StateVector(e)), 1e-15);
            EXPECT_FALSE(is_product_bipartition(s));
            b.push_back(s);
        }
    }
    for (std::size_t x = 0; x < 4; ++x) {
        for (std::size_t y = 0; y < 4; ++y) {
            EXPECT_LE(std::abs(inner_product(b[x], b[y]) - Complex(x == y ? 1.0 : 0.0)), 1e-15);
        }
    }
}

TEST(Superdense, AllPairsRoundTrip) {
    for (unsigned b1 = 0; b1 < 2; ++b1) {
        for (unsigned b2 = 0; b2 < 2; ++b2) {
            EXPECT_EQ(superdense(b1, b2), std::make_pair(b1, b2));
        }
    }
    EXPECT_THROW((void)superdense(2, 0), std::invalid_argument);
}

TEST(Teleport, BasisAndPlus) {
    for (unsigned m1 = 0; m1 < 2; ++m1) {
        for (unsigned m2 = 0; m2 < 2; ++m2) {
            const auto plus = ket({kInvSqrt2, kInvSqrt2});
            const auto r = teleport_branch(plus, m1, m2);
            EXPECT_NEAR(fidelity_mod_phase(r.received, plus), 1.0, 1e-12);
            EXPECT_NEAR(r.branch_probability, 0.25, 1e-12);
        }
    }
    CounterRng rng(0);
    EXPECT_NEAR(fidelity_mod_phase(teleport(StateVector(1), rng).received, StateVector(1)), 1.0, 1e-12);
}

TEST(Teleport, RandomInputsEveryBranch) {
    CounterRng rng(314);
    for (int i = 0; i < 100; ++i) {
        const auto q = random_state(1, rng);
        for (unsigned m1 = 0; m1 < 2; ++m1) {
            for (unsigned m2 = 0; m2 < 2; ++m2) {
                ASSERT_NEAR(fidelity_mod_phase(teleport_branch(q, m1, m2).received, q), 1.0, 1e-9);
            }
        }
        CounterRng shot(static_cast<std::uint64_t>(i) * 7919);
        const auto r = teleport(q, shot);
        ASSERT_NEAR(fidelity_mod_phase(r.received, q), 1.0, 1e-9);
    }
}

TEST(HadamardTest, Examples) {
    CounterRng rng(4);
    const auto q = random_state(2, rng);
    EXPECT_NEAR(hadamard_test(gates::identity(2), q, false).p0, 1.0, 1e-12);
    const auto plus = ket({kInvSqrt2, kInvSqrt2});
    EXPECT_NEAR(hadamard_test(gates::z(), plus, false).p0, 0.5, 1e-12);
    EXPECT_THROW((void)hadamard_test(gates::z(), q, false), std::invalid_argument);
}

TEST(HadamardTest, EigenphaseGrid) {
    for (int k = 0; k < 32; ++k) {
        const double theta = 2 * kPi * k / 32.0;
        const auto r = hadamard_test(gates::phase(theta), basis_state(1, 1), false);
        EXPECT_NEAR(r.p0, std::cos(theta / 2) * std::cos(theta / 2), 1e-12);
        EXPECT_NEAR(r.p0 + r.p1, 1.0, 1e-12);
    }
}

// Real and imaginary parts recovered from both variants on random inputs.
TEST(HadamardTest, RealAndImaginaryParts) {
    CounterRng rng(21);
    for (int i = 0; i < 50; ++i) {
        const GateDef u("u", qktest::random_unitary(4, rng));
        const auto q = random_state(2, rng);
        const Complex e = inner_product(q, StateVector(u.matrix().apply(q.vector())));
        const auto re = hadamard_test(u, q, false);
        const auto im = hadamard_test(u, q, true);
        EXPECT_NEAR(re.p0, 0.5 * (1 + e.real()), 1e-12);
        EXPECT_NEAR(im.p0, 0.5 * (1 + e.imag()), 1e-12);
        EXPECT_NEAR(im.p0 + im.p1, 1.0, 1e-12);
    }
    // S|1> = i|1>: Im = 1 so the imaginary variant always reads 0.
    EXPECT_NEAR(hadamard_test(gates::s(), basis_state(1, 1), true).p0, 1.0, 1e-12);
}

TEST(SwapTest, Examples) {
    const auto z = swap_test(basis_state(1, 0), basis_state(1, 1));
    EXPECT_NEAR(z.p0, 0.5, 1e-12);
    EXPECT_NEAR(z.p1, 0.5, 1e-12);
    const auto same = swap_test(basis_state(1, 1), basis_state(1, 1));
    EXPECT_NEAR(same.p0, 1.0, 1e-12);
    EXPECT_NEAR(same.p1, 0.0, 1e-12);
    EXPECT_NEAR(swap_test(basis_state(1, 0), ket({kInvSqrt2, kInvSqrt2})).p0, 0.75, 1e-12);
    EXPECT_THROW((void)swap_test(StateVector(1), StateVector(2)), std::invalid_argument);
}

TEST(SwapTest, RandomPairsMultiQubit) {
    CounterRng rng(8);
    for (int i = 0; i < 50; ++i) {
        const unsigned k = 1 + static_cast<unsigned>(rng.next_u64() % 3);
        const auto a = random_state(k, rng);
        const auto b = random_state(k, rng);
        const double ov = std::norm(inner_product(a, b));
        EXPECT_NEAR(swap_test(a, b).p0, 0.5 * (1 + ov), 1e-10);
    }
}

TEST(SwapTest, OrthogonalMeasurementOnControl) {
    // Full output state, control qubit measured: both outcomes equally likely.
    StateVector s = tensor(StateVector(1), tensor(basis_state(1, 0), basis_state(1, 1)));
    apply_gate_inplace(s, {gates::hadamard(), {0}});
    apply_gate_inplace(s, {gates::cswap(), {0, 1, 2}});
    apply_gate_inplace(s, {gates::hadamard(), {0}});
    const std::vector<unsigned> c{0};
    EXPECT_NEAR(project(s, c, 0).probability, 0.5, 1e-12);
    EXPECT_NEAR(project(s, c, 1).probability, 0.5, 1e-12);
}

TEST(Qft, OneQubitIsHadamard) {
    EXPECT_LE(max_abs_diff(qft_matrix(1), gates::hadamard().matrix()), 1e-15);
    EXPECT_LE(max_abs_diff(circuit_unitary(qft(1)), gates::hadamard().matrix()), 1e-15);
}

TEST(Qft, TwoQubitDisplay) {
    const DenseMatrix expected = 0.5 * DenseMatrix{{1, 1, 1, 1}, {1, I1, -1, -I1}, {1, -1, 1, -1}, {1, -I1, -1, I1}};
    EXPECT_LE(max_abs_diff(qft_matrix(2), expected), 1e-12);
    EXPECT_LE(max_abs_diff(circuit_unitary(qft(2)), expected), 1e-12);
    const auto out = apply_circuit(basis_state("01"), qft(2));
    EXPECT_LE(max_abs_diff(out, ket({0.5, 0.5 * I1, -0.5, -0.5 * I1})), 1e-12);
}

TEST(Qft, CircuitMatchesMatrixAndInverse) {
    for (unsigned n = 1; n <= 6; ++n) {
        const auto m = qft_matrix(n);
        EXPECT_TRUE(is_unitary(m, Tolerance{1e-12}));
        EXPECT_LE(max_abs_diff(circuit_unitary(qft(n)), m), 1e-10) << n;
        const auto id = circuit_unitary(qft(n)) * circuit_unitary(iqft(n));
        EXPECT_LE(max_abs_diff(id, DenseMatrix::identity(m.rows())), 1e-10);
        EXPECT_LE(max_abs_diff(m * dagger(m), DenseMatrix::identity(m.rows())), 1e-12);
    }
}

TEST(HadamardTransform, WalshFormula) {
    for (unsigned n = 1; n <= 4; ++n) {
        Circuit c(n);
        for (unsigned q = 0; q < n; ++q) {
            c.add(gates::hadamard(), {q});
        }
        const double scale = 1.0 / std::sqrt(static_cast<double>(1U << n));
        for (std::uint64_t x = 0; x < (1U << n); ++x) {
            const auto out = apply_circuit(basis_state(n, x), c);
            for (std::uint64_t y = 0; y < (1U << n); ++y) {
                const double sign = std::bitset<8>(x & y).count() % 2 ? -1.0 : 1.0;
                EXPECT_NEAR(std::abs(out[y] - Complex(sign * scale)), 0.0, 1e-12);
            }
            EXPECT_LE(max_abs_diff(apply_circuit(out, c), basis_state(n, x)), 1e-12);
        }
    }
}

TEST(PhaseEstimate, Examples) {
    EXPECT_DOUBLE_EQ(phase_estimate(gates::z(), basis_state(1, 1), 1, 100, 0).theta, kPi);
    EXPECT_EQ(phase_estimate(gates::identity(), basis_state(1, 0), 3, 100, 0).theta, 0.0);
    const auto s = phase_estimate(gates::s(), basis_state(1, 1), 2, 100, 0);
    EXPECT_DOUBLE_EQ(s.theta, kPi / 2);
    EXPECT_NEAR(s.distribution[1], 1.0, 1e-12);
}

TEST(PhaseEstimate, ExactBinaryPhases) {
    for (unsigned m = 1; m <= 5; ++m) {
        for (std::uint64_t y = 0; y < (1U << m); ++y) {
            const double theta = 2 * kPi * static_cast<double>(y) / (1U << m);
            const auto pe = phase_estimate(gates::phase(theta), basis_state(1, 1), m, 16, 7);
            EXPECT_EQ(pe.outcome, y);
            EXPECT_NEAR(pe.distribution[y], 1.0, 1e-9);
        }
    }
}

TEST(PhaseEstimate, TwoQubitEigenstate) {
    // CZ|11> = -|11>.
    const auto pe = phase_estimate(gates::cz(), basis_state("11"), 3, 32, 1);
    EXPECT_DOUBLE_EQ(pe.theta, kPi);
}

TEST(PhaseEstimate, RejectsNonEigenstate) {
    EXPECT_THROW((void)phase_estimate(gates::x(), basis_state(1, 0), 2, 10, 0), std::domain_error);
    EXPECT_THROW((void)phase_estimate(gates::x(), basis_state(2, 0), 2, 10, 0), std::invalid_argument);
}

TEST(PeriodClassical, Examples) {
    EXPECT_EQ(period_classical(2, 15).period, 4u);
    EXPECT_FALSE(period_classical(2, 15).method_failure);
    EXPECT_EQ(period_classical(2, 21).period, 6u);
    EXPECT_FALSE(period_classical(2, 21).method_failure);
    const auto f = period_classical(5, 21);
    EXPECT_EQ(f.period, 6u);
    EXPECT_TRUE(f.method_failure);
    EXPECT_EQ(pow_mod(5, 3, 21), 20u);
    EXPECT_TRUE(period_classical(2, 7).method_failure);
    EXPECT_THROW((void)period_classical(3, 15), std::invalid_argument);
}

TEST(Shor15, ConditionedBranchMatchesDisplay) {
    const auto r = shor15(13, pow_mod(13, 3, 15), 0);
    EXPECT_EQ(r.residue, 7u);
    for (std::size_t y = 0; y < 16; ++y) {
        EXPECT_NEAR(r.distribution[y], y % 4 == 0 ? 0.25 : 0.0, 1e-9) << y;
    }
    // 1/2|0> + i/2|4> - 1/2|8> - i/2|12>, up to global phase.
    std::vector<Complex> w(16);
    w[0] = 0.5;
    w[4] = 0.5 * I1;
    w[8] = -0.5;
    w[12] = -0.5 * I1;
    EXPECT_NEAR(fidelity_mod_phase(StateVector(r.upper_amplitudes).normalized(), StateVector(w)), 1.0,
                1e-9);
    ASSERT_TRUE(r.period.has_value());
    EXPECT_EQ(*r.period, 4u);
    EXPECT_EQ(r.factors, (std::vector<std::uint64_t>{3, 5}));
}

TEST(Shor15, ResiduesForThirteen) {
    std::vector<std::uint64_t> residues;
    for (std::uint64_t x = 0; x < 4; ++x) {
        residues.push_back(pow_mod(13, x, 15));
    }
    EXPECT_EQ(residues, (std::vector<std::uint64_t>{1, 13, 4, 7}));
}

TEST(Shor15, BaseFourPeriodTwo) {
    const auto r = shor15(4, std::nullopt, 5);
    ASSERT_TRUE(r.period.has_value());
    EXPECT_EQ(*r.period, 2u);
    EXPECT_EQ(r.factors, (std::vector<std::uint64_t>{3, 5}));
}

TEST(Shor15, SupportOnMultiplesOfPeriodSpacing) {
    for (std::uint64_t a = 2; a < 15; ++a) {
        if (std::gcd(a, std::uint64_t{15}) != 1) {
            EXPECT_THROW((void)shor15(a, std::nullopt, 0), std::invalid_argument);
            continue;
        }
        const auto pc = period_classical(a, 15);
        for (std::uint64_t x = 0; x < pc.period; ++x) {
            const auto r = shor15(a, pow_mod(a, x, 15), 0);
            double total = 0;
            for (std::size_t y = 0; y < 16; ++y) {
                if (y % 4 != 0) {
                    EXPECT_NEAR(r.distribution[y], 0.0, 1e-12) << a << " " << y;
                }
                total += r.distribution[y];
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
            EXPECT_EQ(r.method_failure, pc.method_failure) << a;
            if (!r.method_failure) {
                EXPECT_EQ(*r.period, pc.period) << a;
                EXPECT_EQ(r.factors, (std::vector<std::uint64_t>{3, 5}));
            }
        }
    }
    EXPECT_THROW((void)shor15(13, 6, 0), std::invalid_argument);
}

} // namespace
