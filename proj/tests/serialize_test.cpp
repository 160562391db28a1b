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

#include "qpd/serialize.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

namespace qpd::serialize {
namespace {

using fock::kGameSector;

optics::OpticalElement random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> mode(0, 3);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  const int i = mode(rng);
  const optics::ModePair pair{i, (i + 1 + mode(rng) % 3) % 4};
  switch (kind(rng)) {
    case 0:
      return optics::BeamSplitter{pair, angle(rng)};
    case 1:
      return optics::PhaseShifter{i, angle(rng)};
    case 2:
      return optics::ConjugatePhasePair{pair, angle(rng)};
    case 3:
      return optics::CrossKerr{pair, angle(rng)};
    default:
      return optics::Mirror{i};
  }
}

json load_fixture(const std::string& name) {
  std::ifstream in(std::string(QPD_FIXTURE_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  return json::parse(in);
}

TEST(Json, ComplexAndMatrixRoundTrip) {
  const std::complex<double> z{0.25, -1.5};
  EXPECT_EQ(complex_to_json(z), json::array({0.25, -1.5}));
  EXPECT_EQ(complex_from_json(complex_to_json(z)), z);
  Eigen::MatrixXcd m(2, 3);
  m << 1, 2, std::complex<double>(0, 3), 4, 5, 6;
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
}

TEST(Json, StateAndOperatorRoundTrip) {
  const auto psi = fock::StateVector::basis_state(kGameSector, {0, 1, 1, 0});
  const auto back = state_from_json(state_to_json(psi));
  EXPECT_EQ(back.sector(), psi.sector());
  EXPECT_EQ(back.amplitudes(), psi.amplitudes());
  const auto u = optics::jgate_target(0.4);
  const auto op = operator_from_json(operator_to_json(u));
  EXPECT_TRUE(op.unitary());
  EXPECT_EQ(op.entries(), u.entries());
}

TEST(Json, ElementFormat) {
  const auto j = element_to_json(optics::CrossKerr{optics::kKerrPair, 0.5});
  EXPECT_EQ(j.at("type"), "cross_kerr");
  EXPECT_EQ(j.at("modes"), json::array({0, 3}));
  EXPECT_EQ(j.at("chi"), 0.5);
  EXPECT_THROW(element_from_json(json{{"type", "lens"}}), std::invalid_argument);
  EXPECT_THROW(element_from_json(json{{"type", "mirror"}}), json::exception);
}

TEST(JsonProperty, CircuitRoundTripPreservesUnitary) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    optics::Circuit c;
    c.label = "random-" + std::to_string(trial);
    const int n = 1 + trial % 9;
    for (int k = 0; k < n; ++k) c.elements.push_back(random_element(rng));
    const json j = circuit_to_json(c);
    const auto back = circuit_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.label, c.label);
    EXPECT_EQ(circuit_to_json(back), j);
    EXPECT_EQ(optics::circuit_unitary(back, kGameSector).entries(),
              optics::circuit_unitary(c, kGameSector).entries());
  }
}

TEST(Json, StrategyCircuitKeepsWarnings) {
  const auto c = optics::strategy_circuit(5.0, 0.0, optics::kAlicePair);
  const auto back = circuit_from_json(circuit_to_json(c));
  EXPECT_EQ(back.warnings, c.warnings);
  EXPECT_FALSE(back.warnings.empty());
}

TEST(Json, JGatePhasesRoundTrip) {
  const auto p = optics::solve_jgate_phases(0.6);
  const auto back = jgate_phases_from_json(jgate_phases_to_json(p));
  EXPECT_EQ(back.theta1, p.theta1);
  EXPECT_EQ(back.theta2, p.theta2);
  EXPECT_EQ(back.kerr_multiplier, p.kerr_multiplier);
  EXPECT_EQ(back.assignment, p.assignment);
  EXPECT_EQ(back.valid, p.valid);
  json bad = jgate_phases_to_json(p);
  bad["assignment"] = "sideways";
  EXPECT_THROW(jgate_phases_from_json(bad), std::invalid_argument);
}

TEST(GoldenFixture, SolvedJGatePhases) {
  const json fixture = load_fixture("jgate_phases.json");
  EXPECT_EQ(fixture.at("schema_version"), kSchemaVersion);
  const double tol = fixture.at("tolerance").get<double>();
  const auto& entries = fixture.at("phases");
  ASSERT_EQ(entries.size(), 10u);
  for (const auto& entry : entries) {
    const auto stored = jgate_phases_from_json(entry);
    ASSERT_TRUE(stored.valid);
    // The stored phases verify on their own...
    const auto match = optics::verify_jgate(stored, tol);
    EXPECT_TRUE(match.equal) << "gamma=" << stored.gamma;
    // ...and the solver still lands on them.
    const auto solved = optics::solve_jgate_phases(stored.gamma, tol);
    EXPECT_EQ(solved.kerr_multiplier, stored.kerr_multiplier);
    EXPECT_EQ(solved.assignment, stored.assignment);
    EXPECT_NEAR(solved.theta1, stored.theta1, 1e-9);
    EXPECT_NEAR(solved.theta2, stored.theta2, 1e-9);
  }
}

TEST(Json, GameResultSchema) {
  game::GameConfig c;
  c.gamma = 0.0;
  const auto r = game::play(c, kDefect, kDefect);
  const auto j = game_result_to_json(r, 0.0);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("backend"), "qubit");
  EXPECT_EQ(j.at("probabilities").at("DD"), 1.0);
  EXPECT_EQ(j.at("p").size(), 4u);
  EXPECT_EQ(j.at("payoffs"), json::array({1.0, 1.0}));
  EXPECT_TRUE(j.at("leakage").is_null());
}

TEST(Csv, LandscapeColumns) {
  game::GameConfig c;
  const game::Game g(c);
  const auto l = game::payoff_landscape(g, kDefect, {3, 2});
  const std::string csv = landscape_to_csv(l);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,phi,payoff");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
  EXPECT_NE(csv.find("\n0,0,0\n"), std::string::npos);
  const auto j = landscape_to_json(l, 0.0, kDefect);
  EXPECT_EQ(j.at("payoff").size(), 3u);
  EXPECT_EQ(j.at("payoff")[0].size(), 2u);
}

TEST(Csv, SweepColumns) {
  equilibrium::SweepOptions opts;
  opts.samples = 3;
  opts.grid = {9, 5};
  const auto sweep = equilibrium::threshold_sweep(game::GameConfig{}, opts);
  const std::string csv = sweep_to_csv(sweep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "gamma,region,dd_nash,qq_nash");
  EXPECT_NE(csv.find("0,classical,1,0"), std::string::npos);
  const auto j = sweep_to_json(sweep);
  EXPECT_EQ(j.at("samples").size(), 3u);
  EXPECT_EQ(j.at("schema_version"), 1);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  const double x = 0.4636476090008061;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

}  // namespace
}  // namespace qpd::serialize
