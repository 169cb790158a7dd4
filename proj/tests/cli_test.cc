// Copyright 2026 The beamdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

struct Outcome {
  int exit_code = -1;
  std::string out;
};

Outcome RunCli(const std::string& args) {
  const std::string command =
      std::string(BEAMDISC_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome outcome;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return outcome;
  std::array<char, 4096> buffer;
  while (std::fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
    outcome.out += buffer.data();
  }
  const int status = pclose(pipe);
  outcome.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return outcome;
}

std::string Config(const std::string& name) {
  return std::string(BEAMDISC_CONFIG_DIR) + "/" + name;
}

class CliTest : public testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("beamdisc_cli_" +
            std::string(testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  static std::string Read(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, ValidateShippedConfigs) {
  for (const char* name :
       {"beam_width.json", "scheme_comparison.json", "beacon_variants.json",
        "error_rate.json", "smoke_both.json"}) {
    const Outcome o = RunCli("validate --config " + Config(name));
    EXPECT_EQ(o.exit_code, 0) << name;
    EXPECT_EQ(o.out.rfind("ok:", 0), 0u) << name;
  }
}

TEST_F(CliTest, RunWritesCsvAndSidecar) {
  const auto out = dir_ / "beam_width.csv";
  const Outcome o = RunCli("run --config " + Config("beam_width.json") +
                        " --out " + out.string());
  ASSERT_EQ(o.exit_code, 0);
  const std::string csv = Read(out);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 25);
  EXPECT_NE(Read(out.string() + ".meta.json").find("\"seed\""),
            std::string::npos);
}

TEST_F(CliTest, OverridesAndJsonFormat) {
  const Outcome o =
      RunCli("run --config " + Config("smoke_both.json") +
          " --mode analytic --format json --seed 99 --epsilon 0.001");
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.out.front(), '[');
  EXPECT_NE(o.out.find("\"seed\": 99"), std::string::npos);
  EXPECT_NE(o.out.find("\"epsilon\": 0.001"), std::string::npos);
  EXPECT_EQ(o.out.find("cdl_sim_s"), std::string::npos);
}

TEST_F(CliTest, SameSeedIsByteIdenticalAcrossJobs) {
  const std::string config = Config("smoke_both.json");
  const auto a = dir_ / "a.csv";
  const auto b = dir_ / "b.csv";
  ASSERT_EQ(RunCli("run --config " + config + " --jobs 1 --out " + a.string())
                .exit_code,
            0);
  ASSERT_EQ(RunCli("run --config " + config + " --jobs 3 --out " + b.string())
                .exit_code,
            0);
  EXPECT_EQ(Read(a), Read(b));
}

TEST_F(CliTest, JobsFromEnvironment) {
  const Outcome o = RunCli("run --config " + Config("smoke_both.json") +
                        " --mode analytic");
  const std::string command = "BEAMDISC_JOBS=2 " + std::string(BEAMDISC_CLI_PATH) +
                              " run --config " + Config("smoke_both.json") +
                              " --mode analytic --out " +
                              (dir_ / "env.csv").string();
  ASSERT_EQ(std::system(command.c_str()), 0);
  EXPECT_NE(Read(dir_ / "env.csv.meta.json").find("\"jobs\": 2"),
            std::string::npos);
  EXPECT_EQ(Read(dir_ / "env.csv"), o.out);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(RunCli("run --config " + Write("bad.json", R"({"base": {"N": -1}})"))
                .exit_code,
            2);
  EXPECT_EQ(RunCli("validate --config " + Write("typo.json", R"({"bsae": {}})"))
                .exit_code,
            2);
  EXPECT_EQ(RunCli("run --config /nonexistent.json").exit_code, 2);
  EXPECT_EQ(RunCli("run").exit_code, 2);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 2);
  EXPECT_EQ(RunCli("run --config " + Config("smoke_both.json") + " --format xml")
                .exit_code,
            2);
}

TEST_F(CliTest, RuntimeErrorsExitThree) {
  const auto out = dir_ / "missing" / "out.csv";
  EXPECT_EQ(RunCli("run --config " + Config("beam_width.json") + " --out " +
                out.string())
                .exit_code,
            3);
}

}  // namespace
