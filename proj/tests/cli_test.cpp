// Copyright 2026 The qpd-optics Authors
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

#include "qpd/tools/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace qpd::cli {
namespace {

using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(Verify, StrategyScopePasses) {
  const auto r = invoke({"verify", "--scope", "strategy", "--tol", "1e-9"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(r.out.find("conventions"), std::string::npos);
}

TEST(Verify, CommutatorScopeListsThreeNorms) {
  const auto r = invoke({"verify", "--scope", "commutators", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("schema_version"), 1);
  int dd = 0, cd = 0, dc = 0;
  for (const auto& c : j.at("checks")) {
    const std::string name = c.at("name");
    EXPECT_LE(c.at("residual").get<double>(), 1e-10);
    dd += name.find("D(x)D") != std::string::npos;
    cd += name.find("C(x)D") != std::string::npos;
    dc += name.find("D(x)C") != std::string::npos;
  }
  EXPECT_GT(dd, 0);
  EXPECT_EQ(dd, cd);
  EXPECT_EQ(dd, dc);
}

TEST(Verify, UnreachableToleranceFails) {
  const auto r = invoke({"verify", "--scope", "jgate", "--tol", "1e-30"});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("residual"), std::string::npos);
}

TEST(Verify, BadScopeIsUsageError) {
  EXPECT_EQ(invoke({"verify", "--scope", "everything"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--tol", "-1"}).code, kExitUsage);
}

TEST(Play, DefectDefectClassical) {
  const auto r = invoke({"play", "--gamma", "0", "--a", "3.14159265,0", "--b",
                         "3.14159265,0", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("payoffs")[0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j.at("payoffs")[1].get<double>(), 1.0, 1e-12);
}

TEST(Play, QuantumQuantumOptical) {
  const auto r = invoke({"play", "--gamma", "1.5708", "--a", "0,1.5708", "--b",
                         "0,1.5708", "--backend", "optical", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("payoffs")[0].get<double>(), 3.0, 1e-9);
  EXPECT_NEAR(j.at("payoffs")[1].get<double>(), 3.0, 1e-9);
  EXPECT_EQ(j.at("backend"), "optical");
  EXPECT_LE(j.at("leakage").get<double>(), 1e-8);
}

TEST(Play, HumanFormatShowsDistributionAndPayoffs) {
  const auto r = invoke({"play", "--gamma", "0", "--a", "C", "--b", "D"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("p(CD) = 1.0000000000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("payoffs (0.000000, 5.000000)"), std::string::npos);
}

TEST(Play, RangeErrorsNameTheFlag) {
  const auto g = invoke({"play", "--gamma", "2.0", "--a", "C", "--b", "C"});
  EXPECT_EQ(g.code, kExitUsage);
  EXPECT_NE(g.err.find("--gamma"), std::string::npos);
  const auto a = invoke({"play", "--gamma", "0", "--a", "4,0", "--b", "C"});
  EXPECT_EQ(a.code, kExitUsage);
  EXPECT_NE(a.err.find("--a"), std::string::npos);
  const auto b = invoke({"play", "--gamma", "0", "--a", "C", "--b", "nope"});
  EXPECT_EQ(b.code, kExitUsage);
  EXPECT_NE(b.err.find("--b"), std::string::npos);
  EXPECT_EQ(invoke({"play", "--gamma", "0", "--a", "C", "--b", "C", "--backend",
                    "photonic"})
                .code,
            kExitUsage);
}

TEST(Sweep, CsvRegionsTransitionInOrder) {
  const auto r = invoke({"sweep", "--from", "0", "--to", "1.5708", "--samples",
                         "50", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = csv_lines(r.out);
  ASSERT_EQ(lines.size(), 51u);
  EXPECT_EQ(lines[0], "gamma,region,dd_nash,qq_nash");
  const std::vector<std::string> order{"classical", "intermediate",
                                       "fully-quantum"};
  std::size_t stage = 0;
  std::vector<bool> seen(3, false);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto first = lines[k].find(',');
    const auto second = lines[k].find(',', first + 1);
    const std::string region = lines[k].substr(first + 1, second - first - 1);
    while (stage < order.size() && order[stage] != region) ++stage;
    ASSERT_LT(stage, order.size()) << "out of order at " << lines[k];
    seen[stage] = true;
  }
  EXPECT_TRUE(seen[0] && seen[1] && seen[2]);
}

TEST(Sweep, DefaultPrintsThresholds) {
  const auto r = invoke({"sweep"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("gamma1 = 0.4636"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("gamma2 = 0.6847"), std::string::npos) << r.out;
}

TEST(Sweep, InvalidRange) {
  EXPECT_EQ(invoke({"sweep", "--from", "1", "--to", "0.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--to", "3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--grid", "2x2"}).code, kExitUsage);
}

TEST(Landscape, ClassicalAgainstDefection) {
  const auto r = invoke({"landscape", "--gamma", "0", "--opponent", "3.14159265,0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = csv_lines(r.out);
  ASSERT_EQ(lines.size(), 65u * 33u + 1u);
  EXPECT_EQ(lines[0], "theta,phi,payoff");
  double max = -1.0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    max = std::max(max, std::stod(lines[k].substr(lines[k].rfind(',') + 1)));
  }
  EXPECT_NEAR(max, 1.0, 1e-12);
}

TEST(Landscape, InvalidGamma) {
  EXPECT_EQ(invoke({"landscape", "--gamma", "-1", "--opponent", "C"}).code,
            kExitUsage);
}

TEST(Output, WritesToFile) {
  const auto path =
      std::filesystem::temp_directory_path() / "qpd_cli_test_output.json";
  std::filesystem::remove(path);
  const auto r = invoke({"play", "--gamma", "0.3", "--a", "Q", "--b", "D",
                         "--format", "json", "--output", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path);
  const auto j = json::parse(in);
  EXPECT_EQ(j.at("schema_version"), 1);
  std::filesystem::remove(path);
}

TEST(ExitCodes, UnknownCommandAndFlags) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"dance"}).code, kExitUsage);
  EXPECT_EQ(invoke({"play", "--gamma", "0", "--a", "C", "--b", "C", "--format",
                    "yaml"})
                .code,
            kExitUsage);
  EXPECT_EQ(invoke({"play", "--bogus"}).code, kExitUsage);
}

TEST(Determinism, MachineReadableOutputIsByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"play", "--gamma", "0.8", "--a", "1,0.5", "--b", "Q", "--format", "json"},
      {"play", "--gamma", "0.8", "--a", "1,0.5", "--b", "Q", "--backend",
       "optical", "--format", "json"},
      {"sweep", "--samples", "12", "--format", "csv"},
      {"sweep", "--samples", "12", "--format", "json"},
      {"landscape", "--gamma", "1.2", "--opponent", "Q", "--grid", "9x5",
       "--format", "json"},
      {"verify", "--scope", "commutators", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    const auto first = invoke(cmd);
    const auto second = invoke(cmd);
    ASSERT_EQ(first.code, kExitOk) << cmd[0] << first.err;
    EXPECT_EQ(first.out, second.out) << cmd[0];
  }
}

}  // namespace
}  // namespace qpd::cli
