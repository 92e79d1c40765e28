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

// qubitkit simulate <file> [--shots K] [--seed S] [--format json|csv] [--amplitudes]
// qubitkit run <algorithm> [flags]
//
// Exit status: 0 ok, 1 usage, 2 parse, 3 runtime/validation.

#include "qubitkit/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qubitkit::cli::UsageError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char **argv) {
    using namespace qubitkit::cli;

    CLI::App app{"qubitkit: state-vector quantum circuit simulator"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    bool timing = false;

    SimulateOptions sim;
    std::string circuit_path;
    auto *simulate = app.add_subcommand("simulate", "run a circuit file");
    simulate->add_option("file", circuit_path, "circuit file ('-' for stdin)")->required();
    simulate->add_option("--shots", shots, "number of samples")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "sampling seed (default $QUBITKIT_SEED or 0)");
    simulate->add_option("--format", sim.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    simulate->add_flag("--amplitudes", sim.amplitudes, "include amplitudes");
    simulate->add_flag("--timing", timing, "include wall time in meta");

    RunOptions run;
    std::string hamiltonian_path;
    auto *run_cmd = app.add_subcommand("run", "run a built-in algorithm");
    run_cmd->add_option("algorithm", run.algorithm,
                        "deutsch dj superdense teleport swap-test qpe shor15 qec-bitflip trotter")
        ->required()
        ->check(CLI::IsMember({"deutsch", "dj", "superdense", "teleport", "swap-test", "qpe",
                               "shor15", "qec-bitflip", "trotter"}));
    run_cmd->add_option("--seed", seed, "seed (default $QUBITKIT_SEED or 0)");
    run_cmd->add_option("--shots", shots, "samples for demonstration or qpe")
        ->check(CLI::PositiveNumber);
    run_cmd->add_flag("--timing", timing, "include wall time in meta");
    run_cmd->add_option("--oracle", run.oracle, "truth table bits (deutsch, dj)");
    run_cmd->add_option("--bits", run.bits, "two bits to send (superdense)");
    run_cmd->add_option("--theta", run.theta, "Bloch theta of the input (teleport, swap-test t1)");
    run_cmd->add_option("--phi", run.phi, "Bloch phi of the input (teleport, swap-test t1)");
    run_cmd->add_option("--theta2", run.theta2, "Bloch theta of swap-test t2");
    run_cmd->add_option("--phi2", run.phi2, "Bloch phi of swap-test t2");
    run_cmd->add_option("--gate", run.gate, "qpe gate: i x z s t p rz");
    run_cmd->add_option("--param", run.param, "qpe gate parameter for p and rz");
    run_cmd->add_option("--eigenstate", run.eigenstate, "qpe eigenstate basis label, e.g. 1");
    run_cmd->add_option("--ancillas", run.ancillas, "qpe ancilla count");
    run_cmd->add_option("--a", run.a, "shor15 base");
    run_cmd->add_option("--condition-branch", run.condition_branch,
                        "shor15: condition on the residue of this x");
    run_cmd->add_option("--condition-residue", run.condition_residue,
                        "shor15: condition on this lower-register residue");
    run_cmd->add_option("--flip", run.flip, "qec-bitflip error wire: none 0 1 2");
    run_cmd->add_option("--trials", run.trials, "qec-bitflip random inputs");
    run_cmd->add_option("--hamiltonian", hamiltonian_path, "trotter Hamiltonian file");
    run_cmd->add_option("--t", run.t, "trotter evolution time");
    run_cmd->add_option("--steps", run.steps, "trotter step count");
    run_cmd->add_option("--initial", run.initial, "trotter initial basis label");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            sim.circuit_text = circuit_path == "-"
                                   ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                   : read_file(circuit_path);
            sim.shots = shots;
            sim.seed = resolve_seed(seed);
            sim.timing = timing;
            std::cout << cmd_simulate(sim).text;
        } else {
            run.seed = resolve_seed(seed);
            run.shots = shots;
            run.timing = timing;
            if (!hamiltonian_path.empty()) {
                run.hamiltonian_text = read_file(hamiltonian_path);
            }
            std::cout << to_json(cmd_run(run));
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qubitkit::ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const qubitkit::PromiseViolation &e) {
        std::cerr << "promise violation: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::invalid_argument &e) {
        // Hamiltonian text errors surface as invalid_argument with a line number.
        std::cerr << "error: " << e.what() << "\n";
        return run_cmd->parsed() && std::string(e.what()).rfind("hamiltonian", 0) == 0
                   ? kExitParse
                   : kExitRuntime;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
