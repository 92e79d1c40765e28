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

#include "qubitkit/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>

namespace {

using namespace qubitkit;
using namespace qubitkit::cli;
using nlohmann::json;

const std::string kData = QK_TEST_DATA_DIR;
const std::string kBell = "qubits 2\nh 0\ncnot 0 1\nmeasure 0 1\n";

struct Proc {
    int status = -1;
    std::string out;
};

Proc run_cli(const std::string &args) {
    const std::string cmd = std::string("'") + QK_CLI_PATH + "' " + args + " 2>/dev/null";
    Proc p;
    FILE *f = popen(cmd.c_str(), "r");
    if (f == nullptr) {
        return p;
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) {
        p.out.append(buf, got);
    }
    const int st = pclose(f);
    p.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return p;
}

RunOptions run_opts(const std::string &alg) {
    RunOptions o;
    o.algorithm = alg;
    return o;
}

TEST(Simulate, BellProbabilitiesAndHistogram) {
    SimulateOptions o;
    o.circuit_text = kBell;
    o.shots = 1000;
    o.seed = 7;
    const auto out = cmd_simulate(o);
    ASSERT_TRUE(out.report.probabilities);
    EXPECT_NEAR((*out.report.probabilities)[0], 0.5, 1e-15);
    EXPECT_NEAR((*out.report.probabilities)[3], 0.5, 1e-15);
    ASSERT_TRUE(out.report.histogram);
    std::uint64_t total = 0;
    for (const auto &[bits, count] : *out.report.histogram) {
        EXPECT_TRUE(bits == "00" || bits == "11") << bits;
        total += count;
    }
    EXPECT_EQ(total, 1000u);
    const json j = json::parse(out.text);
    EXPECT_EQ(j["meta"]["seed"], 7);
    EXPECT_EQ(j["meta"]["shots"], 1000);
    EXPECT_EQ(j["meta"]["sampled"], json::array({0, 1}));
}

TEST(Simulate, JsonKeySchema) {
    SimulateOptions o;
    o.circuit_text = kBell;
    auto keys = [](const std::string &text) {
        std::set<std::string> k;
        const json j = json::parse(text);
        for (const auto &[key, v] : j.items()) {
            k.insert(key);
        }
        return k;
    };
    EXPECT_EQ(keys(cmd_simulate(o).text), (std::set<std::string>{"probabilities", "meta"}));
    o.shots = 3;
    o.amplitudes = true;
    EXPECT_EQ(keys(cmd_simulate(o).text),
              (std::set<std::string>{"probabilities", "histogram", "amplitudes", "meta"}));
    const json j = json::parse(cmd_simulate(o).text);
    EXPECT_FALSE(j["meta"].contains("wall_ms"));
    EXPECT_NEAR(j["amplitudes"][0][0].get<double>(), qktest::kInvSqrt2, 1e-15);
    EXPECT_EQ(j["amplitudes"][0][1].get<double>(), 0.0);
    o.timing = true;
    EXPECT_TRUE(json::parse(cmd_simulate(o).text)["meta"].contains("wall_ms"));
}

TEST(Simulate, CsvFormat) {
    SimulateOptions o;
    o.circuit_text = kBell;
    o.format = "csv";
    const auto probs = cmd_simulate(o).text;
    EXPECT_NE(probs.find("00"), std::string::npos);
    o.shots = 10;
    o.seed = 1;
    const auto hist = cmd_simulate(o).text;
    EXPECT_EQ(hist.rfind("label,bits,probability,count\n", 0), 0u);
    o.format = "xml";
    EXPECT_THROW((void)cmd_simulate(o), UsageError);
}

TEST(Simulate, MeasureSubsetMarginal) {
    SimulateOptions o;
    o.circuit_text = "qubits 3\nx 2\nh 0\nmeasure 2\n";
    o.shots = 50;
    const auto out = cmd_simulate(o);
    EXPECT_EQ(out.report.meta.sampled, (std::vector<unsigned>{2}));
    ASSERT_EQ(out.report.histogram->size(), 1u);
    EXPECT_EQ(out.report.histogram->at("1"), 50u);
}

TEST(Simulate, ParseErrorsPropagate) {
    SimulateOptions o;
    o.circuit_text = "";
    try {
        (void)cmd_simulate(o);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.kind(), ParseErrorKind::MissingHeader);
    }
}

TEST(Run, DeutschJozsaConstant) {
    auto o = run_opts("dj");
    o.oracle = "11111111";
    const auto r = cmd_run(o);
    EXPECT_EQ(r.result["verdict"], "constant");
    EXPECT_NEAR(r.result["p_all_zero"].get<double>(), 1.0, 1e-12);
    o.oracle = "0110";
    EXPECT_EQ(cmd_run(o).result["verdict"], "balanced");
    o.oracle = "0111";
    EXPECT_THROW((void)cmd_run(o), PromiseViolation);
    o.oracle = "01a1";
    EXPECT_THROW((void)cmd_run(o), UsageError);
}

TEST(Run, Deutsch) {
    auto o = run_opts("deutsch");
    o.oracle = "01";
    EXPECT_EQ(cmd_run(o).result["verdict"], "balanced");
    o.oracle = "00";
    EXPECT_EQ(cmd_run(o).result["verdict"], "constant");
    o.oracle = "0110";
    EXPECT_THROW((void)cmd_run(o), UsageError);
}

TEST(Run, Shor15ConditionedBranch) {
    auto o = run_opts("shor15");
    o.a = 13;
    o.condition_branch = 3;
    const auto r = cmd_run(o);
    EXPECT_EQ(r.result["residue"], 7);
    for (const char *y : {"0", "4", "8", "12"}) {
        EXPECT_NEAR(r.result["distribution"][y].get<double>(), 0.25, 1e-9) << y;
    }
    EXPECT_EQ(r.result["distribution"].size(), 4u);
    EXPECT_EQ(r.result["period"], 4);
    EXPECT_EQ(r.result["factors"], json::array({3, 5}));
    o.condition_residue = 7;
    EXPECT_THROW((void)cmd_run(o), UsageError);
}

TEST(Run, QecBitflip) {
    for (const char *flip : {"none", "0", "1", "2"}) {
        auto o = run_opts("qec-bitflip");
        o.flip = flip;
        o.trials = 100;
        const auto r = cmd_run(o);
        EXPECT_NEAR(r.result["min_fidelity"].get<double>(), 1.0, 1e-9) << flip;
    }
    auto o = run_opts("qec-bitflip");
    o.flip = "1";
    EXPECT_EQ(cmd_run(o).result["syndrome"], "11");
    o.flip = "3";
    EXPECT_THROW((void)cmd_run(o), UsageError);
}

TEST(Run, SuperdenseTeleportSwapTest) {
    const auto sd = cmd_run(run_opts("superdense"));
    EXPECT_EQ(sd.result["transmissions"].size(), 4u);
    EXPECT_TRUE(sd.result["all_recovered"].get<bool>());

    auto tp = run_opts("teleport");
    tp.theta = 1.1;
    tp.phi = 0.4;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        tp.seed = seed;
        EXPECT_NEAR(cmd_run(tp).result["fidelity"].get<double>(), 1.0, 1e-9);
    }

    auto sw = run_opts("swap-test");
    sw.theta = 0.0;
    sw.theta2 = kPi;
    EXPECT_NEAR(cmd_run(sw).result["p0"].get<double>(), 0.5, 1e-12);
    sw.theta2 = 0.0;
    EXPECT_NEAR(cmd_run(sw).result["p0"].get<double>(), 1.0, 1e-12);
}

TEST(Run, PhaseEstimation) {
    auto o = run_opts("qpe");
    o.gate = "t";
    o.ancillas = 3;
    const auto r = cmd_run(o);
    EXPECT_NEAR(r.result["theta"].get<double>(), kPi / 4, 1e-12);
    EXPECT_EQ(r.result["outcome"], 1);
    o.eigenstate = "+";
    EXPECT_THROW((void)cmd_run(o), UsageError);
}

TEST(Run, Trotter) {
    auto o = run_opts("trotter");
    o.hamiltonian_text = "1 X\n1 Z\n";
    o.steps = 128;
    const auto fine = cmd_run(o).result["error"].get<double>();
    o.steps = 8;
    const auto coarse = cmd_run(o).result["error"].get<double>();
    EXPECT_LT(fine, coarse);
    o.hamiltonian_text = "0.5 ZZ\n0.25 ZI\n";
    o.steps = 1;
    EXPECT_LE(cmd_run(o).result["error"].get<double>(), 1e-10);
    o.hamiltonian_text = "";
    EXPECT_THROW((void)cmd_run(o), UsageError);
    o.hamiltonian_text = "1 X\n1 ZZ\n";
    EXPECT_THROW((void)cmd_run(o), std::invalid_argument);
}

TEST(Seed, EnvironmentFallback) {
    ::unsetenv("QUBITKIT_SEED");
    EXPECT_EQ(resolve_seed(std::nullopt), 0u);
    ::setenv("QUBITKIT_SEED", "42", 1);
    EXPECT_EQ(resolve_seed(std::nullopt), 42u);
    EXPECT_EQ(resolve_seed(9), 9u);
    ::setenv("QUBITKIT_SEED", "x", 1);
    EXPECT_THROW((void)resolve_seed(std::nullopt), UsageError);
    ::unsetenv("QUBITKIT_SEED");
}

TEST(Binary, ExitCodes) {
    EXPECT_EQ(run_cli("simulate '" + kData + "/bell.qc'").status, 0);
    EXPECT_EQ(run_cli("").status, 1);
    EXPECT_EQ(run_cli("frobnicate").status, 1);
    EXPECT_EQ(run_cli("simulate /nonexistent/file.qc").status, 1);
    EXPECT_EQ(run_cli("run nope").status, 1);
    EXPECT_EQ(run_cli("run dj").status, 1);
    EXPECT_EQ(run_cli("simulate - < /dev/null").status, 2);
    EXPECT_EQ(run_cli("run dj --oracle 0111").status, 3);
    EXPECT_EQ(run_cli("run dj --oracle 11111111").status, 0);
}

TEST(Binary, ByteIdenticalWithFixedSeed) {
    const std::string args = "simulate '" + kData + "/ghz3.qc' --shots 500 --seed 11 --amplitudes";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    ASSERT_EQ(a.status, 0);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run_cli("run qpe --gate t --seed 3").out, run_cli("run qpe --gate t --seed 3").out);
}

TEST(Binary, BellHistogramSupport) {
    const auto p = run_cli("simulate '" + kData + "/bell.qc' --shots 1000 --seed 7");
    ASSERT_EQ(p.status, 0);
    const json j = json::parse(p.out);
    ASSERT_TRUE(j.contains("histogram"));
    std::uint64_t total = 0;
    for (const auto &[bits, count] : j["histogram"].items()) {
        EXPECT_TRUE(bits == "00" || bits == "11");
        total += count.get<std::uint64_t>();
    }
    EXPECT_EQ(total, 1000u);
}

TEST(Binary, StdinAndEnvSeed) {
    const auto direct = run_cli("simulate '" + kData + "/bell.qc' --shots 20 --seed 5");
    const std::string env_cmd = "simulate - --shots 20 < '" + kData + "/bell.qc'";
    ::setenv("QUBITKIT_SEED", "5", 1);
    const auto env = run_cli(env_cmd);
    ::unsetenv("QUBITKIT_SEED");
    EXPECT_EQ(env.status, 0);
    EXPECT_EQ(env.out, direct.out);
}

} // namespace
