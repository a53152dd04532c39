// Copyright 2026 The qsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "qsearch/qasm.hpp"

namespace qsearch {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded unless `env` asks.
Result Cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + QSEARCH_CLI + "' " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Fixture() { return std::string("'") + QSEARCH_DATA_DIR + "/literal_search.qasm'"; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qsearch_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << body;
    return "'" + p.string() + "'";
  }

  fs::path dir_;
};

TEST_F(CliTest, RunFixtureJson) {
  const Result r = Cli("run " + Fixture() + " --shots 8192 --seed 1 --format json");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["shots"], 8192);
  EXPECT_EQ(doc["seed"], 1);
  EXPECT_EQ(doc["counts"].size(), 4U);
  for (const auto& [k, v] : doc["exact_probabilities"].items()) EXPECT_DOUBLE_EQ(v.get<double>(), 0.25) << k;
  EXPECT_TRUE(doc.contains("circuit_digest"));
}

TEST_F(CliTest, RunIsByteIdenticalForFixedSeed) {
  const Result a = Cli("run " + Fixture() + " --seed 17 --format json");
  const Result b = Cli("run " + Fixture() + " --seed 17 --format json");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, EnvironmentSeedAndFlagPrecedence) {
  const Result env = Cli("run " + Fixture() + " --format json", "QSIM_SEED=5");
  const Result flag = Cli("run " + Fixture() + " --seed 5 --format json");
  const Result both = Cli("run " + Fixture() + " --seed 5 --format json", "QSIM_SEED=99");
  ASSERT_EQ(env.code, 0);
  EXPECT_EQ(env.out, flag.out);
  EXPECT_EQ(both.out, flag.out);
  EXPECT_EQ(nlohmann::json::parse(env.out)["seed"], 5);
  EXPECT_EQ(Cli("run " + Fixture(), "QSIM_SEED=abc").code, 2);
}

TEST_F(CliTest, CsvAndOutputFile) {
  const std::string out = (dir_ / "r.csv").string();
  const Result r = Cli("run " + Fixture() + " --format csv -o '" + out + "'");
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "bitstring,count,probability");
}

TEST_F(CliTest, SearchAlgorithmText) {
  const Result r = Cli("search --n 2 --key 01 --variant algorithm --shots 8192");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("01  8192"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("NOT"), std::string::npos) << r.out;
}

TEST_F(CliTest, SearchLiteralIsFlagged) {
  const Result r = Cli("search --n 2 --key 01 --variant qasm-literal");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("does NOT read the key with certainty"), std::string::npos) << r.out;
}

TEST_F(CliTest, SearchReadoutNoise) {
  const Result r = Cli("search --n 2 --key 01 --readout 0.136 --shots 8192 --format json");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["exact_probabilities"].is_null());
  EXPECT_NEAR(doc["counts"]["01"].get<double>() / 8192.0, 0.747, 0.02);
}

TEST_F(CliTest, NoiseFile) {
  const std::string model = Write("m.json", "{\"readout_p01\":0.5,\"readout_p10\":0.5}");
  const Result r = Cli("search --n 1 --key 1 --noise " + model + " --shots 4000 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["counts"]["1"].get<double>(), 2000.0, 200.0);
  EXPECT_EQ(Cli("search --n 1 --key 1 --noise " + Write("bad.json", "{\"readout_p01\":3}")).code, 2);
}

TEST_F(CliTest, EmitQasmRoundTrips) {
  const std::string path = (dir_ / "s.qasm").string();
  ASSERT_EQ(Cli("search --n 2 --key 01 --variant qasm-literal --emit-qasm '" + path + "'").code, 0);
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  std::ifstream fx(std::string(QSEARCH_DATA_DIR) + "/literal_search.qasm");
  std::ostringstream fs_text;
  fs_text << fx.rdbuf();
  EXPECT_EQ(parse_qasm(os.str()), parse_qasm(fs_text.str()));
}

TEST_F(CliTest, Grover) {
  const Result r = Cli("grover --n 3 --key 101 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["exact_probabilities"]["101"].get<double>(), 0.9453125, 1e-6);
  const Result text = Cli("grover --n 3 --key 101");
  EXPECT_NE(text.out.find("iterations: 2 (auto)"), std::string::npos) << text.out;
  EXPECT_EQ(Cli("grover --n 3 --key 101 --iterations x").code, 2);
}

TEST_F(CliTest, Verify) {
  const Result r = Cli("verify");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all suites passed"), std::string::npos);
  EXPECT_EQ(Cli("verify --tolerance 1e-30").code, 5);
}

TEST_F(CliTest, FitNoise) {
  const Result r = Cli("fit-noise --n 2 --key 01 --target 0.747 --format json");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["converged"].get<bool>());
  EXPECT_NEAR(doc["p"].get<double>(), 0.136, 0.01);
  EXPECT_EQ(Cli("fit-noise --n 2 --key 01 --target 0.1").code, 4);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli("run '" + (dir_ / "missing.qasm").string() + "'").code, 1);
  EXPECT_EQ(Cli("run " + Fixture() + " -o '" + (dir_ / "no/such/dir/x").string() + "'").code, 1);
  EXPECT_EQ(Cli("").code, 2);
  EXPECT_EQ(Cli("bogus").code, 2);
  EXPECT_EQ(Cli("run " + Fixture() + " --shots 0").code, 2);
  EXPECT_EQ(Cli("run " + Fixture() + " --format xml").code, 2);
  EXPECT_EQ(Cli("search --n 2 --key 012").code, 2);
  const std::string header = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[1];\n";
  EXPECT_EQ(Cli("run " + Write("p.qasm", header + "hx q[0];\n")).code, 2);
  EXPECT_EQ(Cli("run " + Write("v.qasm", header + "cx q[0],q[0];\n")).code, 3);
  EXPECT_EQ(Cli("run " + Write("w.qasm", header + "measure q[0] -> c[0];\nmeasure q[1] -> c[0];\n")).code, 3);
  EXPECT_EQ(Cli("--help").code, 0);
}

}  // namespace
}  // namespace qsearch
