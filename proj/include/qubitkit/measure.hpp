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
 * Projective measurement in the computational basis and seeded sampling.
 *
 * Randomness comes from CounterRng, a counter-based SplitMix64: draw i of
 * seed s is mix64(s + (i + 1) * 0x9E3779B97F4A7C15) with Vigna's finalizer
 * constants. The stream depends only on (seed, i), so histograms are
 * reproducible on any platform and in any language that implements the
 * same three lines.
 */
#pragma once

#include "qubitkit/state.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qubitkit {

class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed = 0) : seed_(seed) {}

    static std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return at(seed_, counter_++); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; consumes two draws.
    double next_normal() {
        const double u1 = 1.0 - next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Haar-random state from normalized complex Gaussians.
inline StateVector random_state(unsigned n, CounterRng &rng) {
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        const double re = rng.next_normal();
        const double im = rng.next_normal();
        a = Complex(re, im);
    }
    return StateVector(std::move(amps)).normalized();
}

struct ShotConfig {
    std::uint64_t shots = 1;
    std::uint64_t seed = 0;

    ShotConfig() = default;
    ShotConfig(std::uint64_t s, std::uint64_t sd) : shots(s), seed(sd) {
        if (s < 1) {
            throw std::invalid_argument("shots must be at least 1");
        }
    }
};

struct MeasurementOutcome {
    std::vector<unsigned> qubits;
    Bits bits;
    double probability = 0.0;
    StateVector post_state;
};

/// |alpha_x|^2, summed later in index order.
inline std::vector<double> probabilities(const StateVector &s) {
    std::vector<double> p(s.dim());
    for (std::size_t x = 0; x < s.dim(); ++x) {
        p[x] = std::norm(s[x]);
    }
    return p;
}

inline double marginal(const StateVector &s, unsigned qubit, unsigned outcome) {
    if (qubit >= s.num_qubits()) {
        throw std::out_of_range("qubit index out of range");
    }
    if (outcome > 1) {
        throw std::invalid_argument("outcome must be 0 or 1");
    }
    const unsigned shift = s.num_qubits() - 1 - qubit;
    double acc = 0.0;
    for (std::size_t x = 0; x < s.dim(); ++x) {
        if (((x >> shift) & 1U) == outcome) {
            acc += std::norm(s[x]);
        }
    }
    return acc;
}

namespace detail {

inline void validate_subset(const StateVector &s, std::span<const unsigned> qubits) {
    if (qubits.empty()) {
        throw std::invalid_argument("no qubits to measure");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] >= s.num_qubits()) {
            throw std::out_of_range("qubit index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("duplicate measured qubits");
            }
        }
    }
}

/// Joint outcome of `qubits` at basis index x, first listed qubit most significant.
inline std::size_t subset_outcome(std::size_t x, unsigned n, std::span<const unsigned> qubits) {
    std::size_t o = 0;
    for (const auto q : qubits) {
        o = (o << 1) | ((x >> (n - 1 - q)) & 1U);
    }
    return o;
}

/// Inverse-CDF sampler over an unnormalized discrete distribution.
class DiscreteSampler {
  public:
    explicit DiscreteSampler(const std::vector<double> &dist) : cdf_(dist.size()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            acc += dist[i];
            cdf_[i] = acc;
            if (dist[i] > 0.0) {
                last_nonzero_ = i;
            }
        }
        if (!(acc > 0.0)) {
            throw std::domain_error("distribution has no mass");
        }
    }

    /// First index whose cumulative mass exceeds u * total; never a zero-mass entry.
    [[nodiscard]] std::size_t operator()(double u) const {
        const double target = u * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        const auto i = static_cast<std::size_t>(it - cdf_.begin());
        return i > last_nonzero_ ? last_nonzero_ : i;
    }

  private:
    std::vector<double> cdf_;
    std::size_t last_nonzero_ = 0;
};

} // namespace detail

/// Exact joint distribution over the 2^k outcomes of `qubits`.
inline std::vector<double> marginal_distribution(const StateVector &s,
                                                 std::span<const unsigned> qubits) {
    detail::validate_subset(s, qubits);
    std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t x = 0; x < s.dim(); ++x) {
        dist[detail::subset_outcome(x, s.num_qubits(), qubits)] += std::norm(s[x]);
    }
    return dist;
}

/// Project onto a fixed outcome and renormalize.
inline MeasurementOutcome project(const StateVector &s, std::span<const unsigned> qubits,
                                  std::size_t outcome) {
    detail::validate_subset(s, qubits);
    if (outcome >= (std::size_t{1} << qubits.size())) {
        throw std::out_of_range("outcome out of range");
    }
    StateVector post = s;
    double prob = 0.0;
    for (std::size_t x = 0; x < s.dim(); ++x) {
        if (detail::subset_outcome(x, s.num_qubits(), qubits) == outcome) {
            prob += std::norm(s[x]);
        } else {
            post[x] = 0.0;
        }
    }
    if (prob < 1e-15) {
        throw std::domain_error("projection onto a zero-probability outcome");
    }
    const double scale = 1.0 / std::sqrt(prob);
    for (auto &a : post.mutable_amplitudes()) {
        a *= scale;
    }
    return {std::vector<unsigned>(qubits.begin(), qubits.end()),
            decimal_to_binary(outcome, static_cast<unsigned>(qubits.size())), prob,
            std::move(post)};
}

/// Sample a joint outcome from its exact marginal and collapse.
inline MeasurementOutcome measure_subset(const StateVector &s, std::span<const unsigned> qubits,
                                         CounterRng &rng) {
    auto dist = marginal_distribution(s, qubits);
    for (auto &p : dist) {
        if (p < 1e-15) {
            p = 0.0;
        }
    }
    const std::size_t outcome = detail::DiscreteSampler(dist)(rng.next_double());
    return project(s, qubits, outcome);
}

inline MeasurementOutcome measure_subset(const StateVector &s,
                                         std::initializer_list<unsigned> qubits,
                                         CounterRng &rng) {
    const std::vector<unsigned> q(qubits);
    return measure_subset(s, std::span<const unsigned>(q), rng);
}

using Histogram = std::map<std::string, std::uint64_t>;

/// `shots` independent draws; keys are outcome bit strings.
inline Histogram sample(const StateVector &s, std::span<const unsigned> qubits,
                        const ShotConfig &config) {
    if (config.shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    const auto dist = marginal_distribution(s, qubits);
    const detail::DiscreteSampler draw(dist);
    CounterRng rng(config.seed);
    std::vector<std::uint64_t> counts(dist.size(), 0);
    for (std::uint64_t i = 0; i < config.shots; ++i) {
        ++counts[draw(rng.next_double())];
    }
    Histogram h;
    const auto k = static_cast<unsigned>(qubits.size());
    for (std::size_t o = 0; o < counts.size(); ++o) {
        if (counts[o] > 0) {
            h[bits_to_string(decimal_to_binary(o, k))] = counts[o];
        }
    }
    return h;
}

/// |i><i| on n qubits.
inline DenseMatrix projector(unsigned n, std::uint64_t i) {
    const std::size_t dim = std::size_t{1} << n;
    if (i >= dim) {
        throw std::out_of_range("basis label out of range");
    }
    DenseMatrix p(dim, dim);
    p(i, i) = 1.0;
    return p;
}

} // namespace qubitkit
