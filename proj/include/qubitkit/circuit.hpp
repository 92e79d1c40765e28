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
 * Circuit IR and the gate-application kernel.
 *
 * apply_gate_inplace walks the 2^{n-k} configurations of the non-target
 * bits, gathers the 2^k amplitudes addressed by the target bits, multiplies
 * them by the gate matrix and scatters them back. embed_unitary builds the
 * same operator densely (Kronecker product plus wire permutation) and is
 * kept as an independent test oracle.
 */
#pragma once

#include "qubitkit/gates.hpp"
#include "qubitkit/state.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace qubitkit {

/// A gate bound to wires; targets[0] carries the gate's most significant bit.
struct CircuitOp {
    GateDef gate;
    std::vector<unsigned> targets;
};

namespace detail {

inline void validate_targets(unsigned arity, std::span<const unsigned> targets, unsigned n) {
    if (targets.size() != arity) {
        throw std::invalid_argument("target count does not match gate arity");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= n) {
            throw std::out_of_range("qubit index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("duplicate target qubits");
            }
        }
    }
}

} // namespace detail

inline void validate_op(const CircuitOp &op, unsigned n) {
    detail::validate_targets(op.gate.arity(), op.targets, n);
}

class Circuit {
  public:
    explicit Circuit(unsigned num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw std::out_of_range("circuit qubit count must be in [1, 30]");
        }
    }

    [[nodiscard]] unsigned num_qubits() const { return num_qubits_; }
    [[nodiscard]] const std::vector<CircuitOp> &ops() const { return ops_; }
    [[nodiscard]] std::size_t size() const { return ops_.size(); }
    [[nodiscard]] bool empty() const { return ops_.empty(); }

    Circuit &add(GateDef gate, std::vector<unsigned> targets) {
        CircuitOp op{std::move(gate), std::move(targets)};
        validate_op(op, num_qubits_);
        ops_.push_back(std::move(op));
        return *this;
    }

    Circuit &add(GateDef gate, std::initializer_list<unsigned> targets) {
        return add(std::move(gate), std::vector<unsigned>(targets));
    }

    /// Append `other`, relabelling its wire w as wire_map[w].
    Circuit &append(const Circuit &other, std::span<const unsigned> wire_map) {
        if (wire_map.size() != other.num_qubits()) {
            throw std::invalid_argument("wire map size must equal the appended circuit width");
        }
        for (const auto &op : other.ops()) {
            std::vector<unsigned> t;
            t.reserve(op.targets.size());
            for (const auto w : op.targets) {
                t.push_back(wire_map[w]);
            }
            add(op.gate, std::move(t));
        }
        return *this;
    }

    Circuit &append(const Circuit &other) {
        std::vector<unsigned> identity_map(other.num_qubits());
        for (unsigned w = 0; w < other.num_qubits(); ++w) {
            identity_map[w] = w;
        }
        return append(other, identity_map);
    }

  private:
    unsigned num_qubits_;
    std::vector<CircuitOp> ops_;
};

/// In-place kernel; the caller holds exclusive access to `state`.
inline void apply_gate_inplace(StateVector &state, const GateDef &gate,
                               std::span<const unsigned> targets) {
    const unsigned n = state.num_qubits();
    detail::validate_targets(gate.arity(), targets, n);
    const unsigned k = gate.arity();
    const std::size_t sub = std::size_t{1} << k;
    const DenseMatrix &m = gate.matrix();
    auto amps = state.mutable_amplitudes();

    // offsets[l]: index contribution of local gate index l.
    std::vector<std::size_t> offsets(sub, 0);
    for (std::size_t l = 0; l < sub; ++l) {
        for (unsigned j = 0; j < k; ++j) {
            if ((l >> (k - 1 - j)) & 1U) {
                offsets[l] |= std::size_t{1} << (n - 1 - targets[j]);
            }
        }
    }
    // Target bit positions ascending, for depositing a compact counter.
    std::vector<unsigned> positions;
    positions.reserve(k);
    for (const auto q : targets) {
        positions.push_back(n - 1 - q);
    }
    std::sort(positions.begin(), positions.end());

    const std::size_t configs = std::size_t{1} << (n - k);

    if (k == 1) {
        const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
        const std::size_t stride = offsets[1];
        const std::size_t low_mask = stride - 1;
        for (std::size_t c = 0; c < configs; ++c) {
            const std::size_t base = ((c & ~low_mask) << 1) | (c & low_mask);
            const Complex a0 = amps[base];
            const Complex a1 = amps[base + stride];
            amps[base] = m00 * a0 + m01 * a1;
            amps[base + stride] = m10 * a0 + m11 * a1;
        }
        return;
    }

    std::vector<Complex> gathered(sub);
    std::vector<Complex> result(sub);
    for (std::size_t c = 0; c < configs; ++c) {
        std::size_t base = c;
        for (const auto p : positions) {
            const std::size_t low = base & ((std::size_t{1} << p) - 1);
            base = ((base >> p) << (p + 1)) | low;
        }
        for (std::size_t l = 0; l < sub; ++l) {
            gathered[l] = amps[base + offsets[l]];
        }
        for (std::size_t r = 0; r < sub; ++r) {
            Complex acc{};
            for (std::size_t l = 0; l < sub; ++l) {
                acc += m(r, l) * gathered[l];
            }
            result[r] = acc;
        }
        for (std::size_t l = 0; l < sub; ++l) {
            amps[base + offsets[l]] = result[l];
        }
    }
}

inline void apply_gate_inplace(StateVector &state, const CircuitOp &op) {
    apply_gate_inplace(state, op.gate, op.targets);
}

inline StateVector apply_gate(StateVector state, const CircuitOp &op) {
    apply_gate_inplace(state, op);
    return state;
}

inline void apply_circuit_inplace(StateVector &state, const Circuit &circuit) {
    if (state.num_qubits() != circuit.num_qubits()) {
        throw std::invalid_argument("state and circuit qubit counts differ");
    }
    for (const auto &op : circuit.ops()) {
        apply_gate_inplace(state, op);
    }
}

inline StateVector apply_circuit(StateVector state, const Circuit &circuit) {
    apply_circuit_inplace(state, circuit);
    return state;
}

inline constexpr unsigned kMaxDenseQubits = 12;

/**
 * Dense 2^n x 2^n operator of `op`: kron(gate, I) in the permuted order
 * (targets..., remaining wires ascending), then conjugated by the wire
 * permutation back to natural order.
 */
inline DenseMatrix embed_unitary(const CircuitOp &op, unsigned n) {
    if (n > kMaxDenseQubits) {
        throw std::out_of_range("embed_unitary is limited to 12 qubits");
    }
    validate_op(op, n);
    const unsigned k = op.gate.arity();
    const DenseMatrix permuted =
        kron(op.gate.matrix(), DenseMatrix::identity(std::size_t{1} << (n - k)));

    // order[p] = natural wire that sits at position p of the permuted layout.
    std::vector<unsigned> order(op.targets.begin(), op.targets.end());
    for (unsigned w = 0; w < n; ++w) {
        if (std::find(op.targets.begin(), op.targets.end(), w) == op.targets.end()) {
            order.push_back(w);
        }
    }
    const std::size_t dim = std::size_t{1} << n;
    auto to_natural = [&](std::size_t permuted_index) {
        std::size_t x = 0;
        for (unsigned p = 0; p < n; ++p) {
            const std::size_t bit = (permuted_index >> (n - 1 - p)) & 1U;
            x |= bit << (n - 1 - order[p]);
        }
        return x;
    };
    std::vector<std::size_t> map(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        map[i] = to_natural(i);
    }
    DenseMatrix out(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out(map[r], map[c]) = permuted(r, c);
        }
    }
    return out;
}

/// Ordered product U_m ... U_1 of the embedded ops.
inline DenseMatrix circuit_unitary(const Circuit &circuit) {
    if (circuit.num_qubits() > kMaxDenseQubits) {
        throw std::out_of_range("circuit_unitary is limited to 12 qubits");
    }
    DenseMatrix u = DenseMatrix::identity(std::size_t{1} << circuit.num_qubits());
    for (const auto &op : circuit.ops()) {
        u = embed_unitary(op, circuit.num_qubits()) * u;
    }
    return u;
}

/// Reverse order, dagger each gate.
inline Circuit inverse(const Circuit &circuit) {
    Circuit out(circuit.num_qubits());
    for (auto it = circuit.ops().rbegin(); it != circuit.ops().rend(); ++it) {
        out.add(gates::adjoint(it->gate), it->targets);
    }
    return out;
}

} // namespace qubitkit
