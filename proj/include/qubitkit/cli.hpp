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
 * Command layer behind the `qubitkit` executable: `simulate` for circuit
 * files and `run` for the built-in algorithms, plus the JSON and CSV
 * emitters. Everything here is deterministic for a fixed seed; wall time is
 * only reported when asked for.
 *
 * JSON report keys:
 *   probabilities  array of 2^n numbers, basis index order
 *   histogram      object bitstring -> count (only with shots)
 *   amplitudes     array of [re, im] pairs (only with --amplitudes)
 *   algorithm      string (run only)
 *   result         object, algorithm specific (run only)
 *   meta           object {seed, shots, qubits, sampled, wall_ms?}
 */
#pragma once

#include "qubitkit/algorithms.hpp"
#include "qubitkit/circuit_file.hpp"
#include "qubitkit/hamsim.hpp"
#include "qubitkit/measure.hpp"
#include "qubitkit/qec.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qubitkit::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitRuntime = 3,
};

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ReportMeta {
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    unsigned qubits = 0;
    std::vector<unsigned> sampled;
    std::optional<double> wall_ms;
};

struct RunReport {
    std::optional<std::vector<Complex>> amplitudes;
    std::optional<std::vector<double>> probabilities;
    std::optional<Histogram> histogram;
    std::optional<std::string> algorithm;
    nlohmann::json result;
    ReportMeta meta;
};

/// --seed wins over QUBITKIT_SEED, which wins over 0.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("QUBITKIT_SEED"); env != nullptr && *env != '\0') {
        const auto v = qubitkit::detail::parse_unsigned(env);
        if (!v) {
            throw UsageError(std::string("QUBITKIT_SEED is not an unsigned integer: ") + env);
        }
        return *v;
    }
    return 0;
}

inline nlohmann::json to_json_value(const RunReport &r) {
    nlohmann::json j = nlohmann::json::object();
    if (r.probabilities) {
        j["probabilities"] = *r.probabilities;
    }
    if (r.histogram) {
        nlohmann::json h = nlohmann::json::object();
        for (const auto &[bits, count] : *r.histogram) {
            h[bits] = count;
        }
        j["histogram"] = h;
    }
    if (r.amplitudes) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto &z : *r.amplitudes) {
            a.push_back({z.real(), z.imag()});
        }
        j["amplitudes"] = a;
    }
    if (r.algorithm) {
        j["algorithm"] = *r.algorithm;
        j["result"] = r.result;
    }
    nlohmann::json meta = {
        {"seed", r.meta.seed},
        {"shots", r.meta.shots},
        {"qubits", r.meta.qubits},
        {"sampled", r.meta.sampled},
    };
    if (r.meta.wall_ms) {
        meta["wall_ms"] = *r.meta.wall_ms;
    }
    j["meta"] = meta;
    return j;
}

inline std::string to_json(const RunReport &r) { return to_json_value(r).dump(2) + "\n"; }

/**
 * `label,bits,probability[,count]`, one row per basis label. With a
 * histogram the rows cover the sampled register and `probability` is its
 * exact marginal.
 */
inline std::string to_csv(const RunReport &r, const StateVector *state = nullptr) {
    std::string out;
    if (r.histogram) {
        out = "label,bits,probability,count\n";
        const auto k = static_cast<unsigned>(r.meta.sampled.size());
        std::vector<double> marg;
        if (state != nullptr) {
            marg = marginal_distribution(*state, r.meta.sampled);
        }
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
            const std::string bits = bits_to_string(decimal_to_binary(x, k));
            const auto it = r.histogram->find(bits);
            const std::uint64_t count = it == r.histogram->end() ? 0 : it->second;
            out += std::to_string(x) + "," + bits + "," +
                   qubitkit::detail::format_real(marg.empty() ? 0.0 : marg[x]) + "," +
                   std::to_string(count) + "\n";
        }
        return out;
    }
    out = "label,bits,probability\n";
    if (r.probabilities) {
        const auto &p = *r.probabilities;
        const unsigned n = log2_exact(p.size());
        for (std::uint64_t x = 0; x < p.size(); ++x) {
            out += std::to_string(x) + "," + bits_to_string(decimal_to_binary(x, n)) + "," +
                   qubitkit::detail::format_real(p[x]) + "\n";
        }
    }
    return out;
}

struct SimulateOptions {
    std::string circuit_text;
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 0;
    std::string format = "json";
    bool amplitudes = false;
    bool timing = false;
};

struct SimulateOutput {
    RunReport report;
    std::string text;
};

inline SimulateOutput cmd_simulate(const SimulateOptions &opts) {
    if (opts.format != "json" && opts.format != "csv") {
        throw UsageError("--format must be json or csv");
    }
    if (opts.shots && *opts.shots < 1) {
        throw UsageError("--shots must be at least 1");
    }
    const auto start = std::chrono::steady_clock::now();
    const CircuitFile file = parse_circuit(opts.circuit_text);
    const CompiledCircuit compiled = compile(file);
    const StateVector out = apply_circuit(StateVector(file.num_qubits), compiled.circuit);

    RunReport r;
    r.probabilities = probabilities(out);
    if (opts.amplitudes) {
        r.amplitudes = out.vector();
    }
    r.meta.seed = opts.seed;
    r.meta.qubits = file.num_qubits;
    if (compiled.measured.empty()) {
        for (unsigned q = 0; q < file.num_qubits; ++q) {
            r.meta.sampled.push_back(q);
        }
    } else {
        r.meta.sampled = compiled.measured;
    }
    if (opts.shots) {
        r.meta.shots = *opts.shots;
        r.histogram = sample(out, r.meta.sampled, ShotConfig(*opts.shots, opts.seed));
    }
    if (opts.timing) {
        r.meta.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    }
    std::string text = opts.format == "csv" ? to_csv(r, &out) : to_json(r);
    return {std::move(r), std::move(text)};
}

struct RunOptions {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> shots;
    bool timing = false;
    // deutsch, dj
    std::string oracle;
    // superdense
    std::string bits;
    // teleport; swap-test uses theta/phi for t1 and theta2/phi2 for t2
    double theta = 0.0;
    double phi = 0.0;
    double theta2 = 0.0;
    double phi2 = 0.0;
    // qpe
    std::string gate = "z";
    double param = 0.0;
    std::string eigenstate = "1";
    unsigned ancillas = 3;
    // shor15
    std::uint64_t a = 13;
    std::optional<std::uint64_t> condition_branch;
    std::optional<std::uint64_t> condition_residue;
    // qec-bitflip
    std::string flip = "none";
    unsigned trials = 100;
    // trotter
    std::string hamiltonian_text;
    double t = 1.0;
    unsigned steps = 64;
    std::string initial;
};

namespace detail {

inline nlohmann::json distribution_json(const std::vector<double> &dist, unsigned width) {
    nlohmann::json d = nlohmann::json::object();
    for (std::size_t y = 0; y < dist.size(); ++y) {
        if (dist[y] > 1e-12) {
            d[qubitkit::bits_to_string(decimal_to_binary(y, width))] = dist[y];
        }
    }
    return d;
}

inline nlohmann::json state_json(const StateVector &s) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto &z : s.amplitudes()) {
        a.push_back({z.real(), z.imag()});
    }
    return a;
}

inline BooleanOracle oracle_from_flag(const std::string &table) {
    if (table.empty()) {
        throw UsageError("--oracle is required");
    }
    try {
        return BooleanOracle::from_string(table);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("--oracle: ") + e.what());
    }
}

inline GateDef qpe_gate(const std::string &name, double param) {
    if (name == "z") {
        return gates::z();
    }
    if (name == "s") {
        return gates::s();
    }
    if (name == "t") {
        return gates::t();
    }
    if (name == "x") {
        return gates::x();
    }
    if (name == "p") {
        return gates::phase(param);
    }
    if (name == "rz") {
        return gates::rz(param);
    }
    if (name == "i") {
        return gates::identity();
    }
    throw UsageError("--gate must be one of i x z s t p rz");
}

inline std::optional<unsigned> flip_wire(const std::string &flag) {
    if (flag == "none") {
        return std::nullopt;
    }
    if (flag == "0" || flag == "1" || flag == "2") {
        return static_cast<unsigned>(flag[0] - '0');
    }
    throw UsageError("--flip must be none, 0, 1 or 2");
}

inline StateVector bloch_flag(double theta, double phi) {
    try {
        return from_bloch({theta, phi});
    } catch (const std::out_of_range &e) {
        throw UsageError(std::string("Bloch angles: ") + e.what());
    }
}

} // namespace detail

inline RunReport cmd_run(const RunOptions &o) {
    const auto start = std::chrono::steady_clock::now();
    RunReport r;
    r.algorithm = o.algorithm;
    r.meta.seed = o.seed;
    nlohmann::json &res = r.result;
    res = nlohmann::json::object();
    const std::string &alg = o.algorithm;

    if (alg == "deutsch" || alg == "dj") {
        const BooleanOracle f = detail::oracle_from_flag(o.oracle);
        if (alg == "deutsch" && f.n() != 1) {
            throw UsageError("deutsch takes a 2-entry --oracle table");
        }
        const DeutschJozsaResult dj = deutsch_jozsa_run(f);
        res["verdict"] = to_string(dj.verdict);
        res["p_all_zero"] = dj.p_all_zero;
        const StateVector out = apply_circuit(StateVector(f.n() + 1), deutsch_jozsa_circuit(f));
        r.probabilities = probabilities(out);
        r.meta.qubits = f.n() + 1;
        for (unsigned q = 0; q < f.n(); ++q) {
            r.meta.sampled.push_back(q);
        }
        if (o.shots) {
            r.meta.shots = *o.shots;
            r.histogram = sample(out, r.meta.sampled, ShotConfig(*o.shots, o.seed));
        }
    } else if (alg == "superdense") {
        std::vector<std::pair<unsigned, unsigned>> inputs;
        if (o.bits.empty()) {
            inputs = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        } else if (o.bits.size() == 2 && o.bits.find_first_not_of("01") == std::string::npos) {
            inputs = {{static_cast<unsigned>(o.bits[0] - '0'), static_cast<unsigned>(o.bits[1] - '0')}};
        } else {
            throw UsageError("--bits must be two characters of 0/1");
        }
        nlohmann::json rows = nlohmann::json::array();
        bool all_ok = true;
        for (const auto &[b1, b2] : inputs) {
            const auto [r1, r2] = superdense(b1, b2);
            const bool ok = r1 == b1 && r2 == b2;
            all_ok = all_ok && ok;
            rows.push_back({{"sent", std::to_string(b1) + std::to_string(b2)},
                            {"received", std::to_string(r1) + std::to_string(r2)},
                            {"ok", ok}});
        }
        res["transmissions"] = rows;
        res["all_recovered"] = all_ok;
        r.meta.qubits = 2;
    } else if (alg == "teleport") {
        const StateVector q = detail::bloch_flag(o.theta, o.phi);
        CounterRng rng(o.seed);
        const TeleportResult tr = teleport(q, rng);
        res["m1"] = tr.m1;
        res["m2"] = tr.m2;
        res["branch_probability"] = tr.branch_probability;
        res["fidelity"] = fidelity_mod_phase(tr.received, q);
        res["received"] = detail::state_json(tr.received);
        r.meta.qubits = 3;
    } else if (alg == "swap-test") {
        const StateVector t1 = detail::bloch_flag(o.theta, o.phi);
        const StateVector t2 = detail::bloch_flag(o.theta2, o.phi2);
        const ProbabilityPair p = swap_test(t1, t2);
        res["p0"] = p.p0;
        res["p1"] = p.p1;
        res["overlap_squared"] = std::norm(inner_product(t1, t2));
        r.meta.qubits = 3;
    } else if (alg == "qpe") {
        const GateDef u = detail::qpe_gate(o.gate, o.param);
        StateVector eig = [&] {
            try {
                return basis_state(o.eigenstate);
            } catch (const std::exception &e) {
                throw UsageError(std::string("--eigenstate: ") + e.what());
            }
        }();
        if (eig.num_qubits() != u.arity()) {
            throw UsageError("--eigenstate width does not match the gate");
        }
        if (o.ancillas < 1 || o.ancillas > 16) {
            throw UsageError("--ancillas must be in [1, 16]");
        }
        const std::uint64_t shots = o.shots.value_or(1024);
        const PhaseEstimate pe = phase_estimate(u, eig, o.ancillas, shots, o.seed);
        res["theta"] = pe.theta;
        res["outcome"] = pe.outcome;
        res["distribution"] = detail::distribution_json(pe.distribution, o.ancillas);
        r.histogram = pe.histogram;
        r.meta.shots = shots;
        r.meta.qubits = o.ancillas + u.arity();
        for (unsigned q = 0; q < o.ancillas; ++q) {
            r.meta.sampled.push_back(q);
        }
    } else if (alg == "shor15") {
        if (o.condition_branch && o.condition_residue) {
            throw UsageError("--condition-branch and --condition-residue are exclusive");
        }
        std::optional<std::uint64_t> residue = o.condition_residue;
        if (o.condition_branch) {
            if (*o.condition_branch > 15) {
                throw UsageError("--condition-branch must be in [0, 15]");
            }
            residue = pow_mod(o.a, *o.condition_branch, 15);
        }
        const ShorResult sr = [&] {
            try {
                return shor15(o.a, residue, o.seed);
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
        }();
        nlohmann::json dist = nlohmann::json::object();
        for (std::size_t y = 0; y < sr.distribution.size(); ++y) {
            if (sr.distribution[y] > 1e-12) {
                dist[std::to_string(y)] = sr.distribution[y];
            }
        }
        res["a"] = sr.a;
        res["residue"] = sr.residue;
        res["distribution"] = dist;
        res["method_failure"] = sr.method_failure;
        if (sr.period) {
            res["period"] = *sr.period;
            res["factors"] = sr.factors;
        } else {
            res["reason"] = sr.reason;
        }
        r.meta.qubits = 8;
    } else if (alg == "qec-bitflip") {
        const auto wire = detail::flip_wire(o.flip);
        if (o.trials < 1) {
            throw UsageError("--trials must be at least 1");
        }
        CounterRng rng(o.seed);
        double min_f = 1.0;
        Syndrome syn;
        for (unsigned i = 0; i < o.trials; ++i) {
            const StateVector q = random_state(1, rng);
            const BitflipRun run = run_bitflip_code(q, wire);
            min_f = std::min(min_f, run.fidelity);
            syn = run.syndrome;
        }
        res["flip"] = o.flip;
        res["trials"] = o.trials;
        res["syndrome"] = std::to_string(syn.s1) + std::to_string(syn.s2);
        res["min_fidelity"] = min_f;
        r.meta.qubits = 5;
    } else if (alg == "trotter") {
        if (o.hamiltonian_text.empty()) {
            throw UsageError("--hamiltonian is required");
        }
        if (o.steps < 1) {
            throw UsageError("--steps must be at least 1");
        }
        const PauliSumHamiltonian h = parse_hamiltonian(o.hamiltonian_text);
        if (h.num_qubits() > kMaxHamiltonianQubits) {
            throw UsageError("trotter supports at most 10 qubits");
        }
        StateVector init(h.num_qubits());
        if (!o.initial.empty()) {
            try {
                init = basis_state(o.initial);
            } catch (const std::exception &e) {
                throw UsageError(std::string("--initial: ") + e.what());
            }
            if (init.num_qubits() != h.num_qubits()) {
                throw UsageError("--initial width does not match the Hamiltonian");
            }
        }
        const StateVector approx = trotter_evolve(h, o.t, o.steps, init);
        const StateVector exact = exact_evolution(h, o.t, init);
        res["t"] = o.t;
        res["steps"] = o.steps;
        res["fidelity"] = fidelity_mod_phase(approx, exact);
        res["error"] = trotter_error(h, o.t, o.steps);
        r.probabilities = probabilities(approx);
        r.meta.qubits = h.num_qubits();
    } else {
        throw UsageError("unknown algorithm '" + alg + "'");
    }
    if (o.timing) {
        r.meta.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    }
    return r;
}

} // namespace qubitkit::cli
