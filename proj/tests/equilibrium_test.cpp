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

#include "qpd/equilibrium.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace qpd::equilibrium {
namespace {

using game::Game;
using game::GameConfig;
using game::Player;

const double kGamma1 = std::asin(std::sqrt(1.0 / 5.0));
const double kGamma2 = std::asin(std::sqrt(2.0 / 5.0));

Game game_at(double gamma) {
  GameConfig c;
  c.gamma = gamma;
  return Game(c);
}

TEST(StrategyGrid, ContainsNamedPointsExactly) {
  const StrategyGrid grid;
  EXPECT_EQ(grid.size(), 65 * 33);
  EXPECT_EQ(grid.at(0, 0), kCooperate);
  EXPECT_EQ(grid.at(64, 0), kDefect);
  EXPECT_EQ(grid.at(0, 32), kQuantum);
  EXPECT_EQ(grid.index_of(kDefect), 64 * 33);
  EXPECT_EQ(grid.index_of(kQuantum), 32);
  EXPECT_EQ(grid.at(64 * 33), kDefect);
  EXPECT_FALSE(grid.index_of({0.001, 0.0}).has_value());
}

TEST(StrategyGrid, Validation) {
  EXPECT_THROW((StrategyGrid{2, 33}.validate()), std::invalid_argument);
  EXPECT_THROW((StrategyGrid{65, 1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((StrategyGrid{3, 3}.validate()));
  EXPECT_THROW(best_response(game_at(0.0), kCooperate, StrategyGrid{2, 2}),
               std::invalid_argument);
}

TEST(BestResponse, ClassicalDefectionAgainstCooperation) {
  const auto br = best_response(game_at(0.0), kCooperate);
  EXPECT_EQ(br.strategy, kDefect);
  EXPECT_EQ(br.theta_index, 64);
  EXPECT_EQ(br.phi_index, 0);
  EXPECT_NEAR(br.payoff, 5.0, 1e-12);
}

TEST(BestResponse, ClassicalDefectionAgainstDefection) {
  const auto br = best_response(game_at(0.0), kDefect);
  EXPECT_EQ(br.strategy, kDefect);
  EXPECT_NEAR(br.payoff, 1.0, 1e-12);
}

TEST(BestResponse, QuantumAtMaximalEntanglement) {
  const auto br = best_response(game_at(kHalfPi), kQuantum);
  EXPECT_NEAR(br.payoff, 3.0, 1e-6);
  const auto bob = best_response(game_at(kHalfPi), kQuantum, {}, Player::kBob);
  EXPECT_NEAR(bob.payoff, 3.0, 1e-6);
}

TEST(BestResponseProperty, DominatesRandomSpotChecks) {
  std::mt19937_64 rng(73);
  const StrategyGrid grid;
  std::uniform_int_distribution<int> ti(0, grid.theta_steps - 1);
  std::uniform_int_distribution<int> pj(0, grid.phi_steps - 1);
  std::uniform_real_distribution<double> g(0.0, kHalfPi);
  for (int round = 0; round < 5; ++round) {
    const Game game = game_at(g(rng));
    const StrategyParams opp = grid.at(ti(rng), pj(rng));
    const auto br_a = best_response(game, opp, grid, Player::kAlice);
    const auto br_b = best_response(game, opp, grid, Player::kBob);
    for (int k = 0; k < 10; ++k) {
      const StrategyParams s = grid.at(ti(rng), pj(rng));
      EXPECT_GE(br_a.payoff, game.play(s, opp).payoff_a - 1e-12);
      EXPECT_GE(br_b.payoff, game.play(opp, s).payoff_b - 1e-12);
    }
  }
}

TEST(IsNash, ClassicalExamples) {
  const Game game = game_at(0.0);
  EXPECT_TRUE(is_nash(game, kDefect, kDefect, {}, 1e-9).nash);
  const auto cc = is_nash(game, kCooperate, kCooperate);
  EXPECT_FALSE(cc.nash);
  EXPECT_GE(cc.max_unilateral_gain, 2.0 - 1e-12);
  EXPECT_NEAR(cc.gain_a, 2.0, 1e-12);
  EXPECT_NEAR(cc.gain_b, 2.0, 1e-12);
}

TEST(IsNash, QuantumPairAtMaximalEntanglement) {
  const auto r = is_nash(game_at(kHalfPi), kQuantum, kQuantum);
  EXPECT_TRUE(r.nash);
  EXPECT_LE(r.max_unilateral_gain, kDefaultEpsilon);
  EXPECT_FALSE(is_nash(game_at(kHalfPi), kDefect, kDefect).nash);
}

TEST(IsNash, IntermediateRegionHasNeither) {
  const Game game = game_at(0.55);
  EXPECT_FALSE(is_nash(game, kDefect, kDefect).nash);
  EXPECT_FALSE(is_nash(game, kQuantum, kQuantum).nash);
}

TEST(FindEquilibria, ClassicalRegion) {
  const Game game = game_at(0.2);
  const auto report = find_equilibria(game);
  EXPECT_TRUE(report.contains(kDefect, kDefect));
  EXPECT_FALSE(report.contains(kQuantum, kQuantum));
  bool found = false;
  for (const auto& eq : report.equilibria) {
    if (eq.a == kDefect && eq.b == kDefect) {
      EXPECT_NEAR(eq.payoff_a, 1.0, 1e-10);
      EXPECT_NEAR(eq.payoff_b, 1.0, 1e-10);
      found = true;
    }
    EXPECT_LE(eq.max_unilateral_gain, report.epsilon);
    EXPECT_TRUE(is_nash(game, eq.a, eq.b, report.grid, report.epsilon).nash);
  }
  EXPECT_TRUE(found);
  EXPECT_DOUBLE_EQ(report.gamma, 0.2);
}

TEST(FindEquilibria, FullyQuantumRegion) {
  const Game game = game_at(1.2);
  const auto report = find_equilibria(game);
  EXPECT_TRUE(report.contains(kQuantum, kQuantum));
  EXPECT_FALSE(report.contains(kDefect, kDefect));
  for (const auto& eq : report.equilibria) {
    EXPECT_TRUE(is_nash(game, eq.a, eq.b, report.grid, report.epsilon).nash);
    if (eq.a == kQuantum && eq.b == kQuantum) {
      EXPECT_NEAR(eq.payoff_a, 3.0, 1e-10);
      EXPECT_NEAR(eq.payoff_b, 3.0, 1e-10);
    }
  }
}

TEST(FindEquilibria, DeterministicOrdering) {
  const Game game = game_at(0.9);
  const StrategyGrid grid{17, 9};
  const auto a = find_equilibria(game, grid);
  const auto b = find_equilibria(game, grid);
  ASSERT_EQ(a.equilibria.size(), b.equilibria.size());
  for (std::size_t k = 0; k < a.equilibria.size(); ++k) {
    EXPECT_EQ(a.equilibria[k].a_index, b.equilibria[k].a_index);
    EXPECT_EQ(a.equilibria[k].b_index, b.equilibria[k].b_index);
    EXPECT_EQ(a.equilibria[k].payoff_a, b.equilibria[k].payoff_a);
    if (k > 0) {
      const auto& p = a.equilibria[k - 1];
      const auto& q = a.equilibria[k];
      EXPECT_TRUE(p.a_index < q.a_index ||
                  (p.a_index == q.a_index && p.b_index < q.b_index));
    }
  }
  const auto br1 = best_response(game, {0.4, 0.2}, grid);
  const auto br2 = best_response(game, {0.4, 0.2}, grid);
  EXPECT_EQ(br1.theta_index, br2.theta_index);
  EXPECT_EQ(br1.phi_index, br2.phi_index);
}

TEST(FindEquilibria, TiesGoToLowestIndex) {
  // Without entanglement phi is irrelevant, so every phi index ties.
  const auto br = best_response(game_at(0.0), {1.0, 0.3});
  EXPECT_EQ(br.phi_index, 0);
}

TEST(RefinementProperty, StrictNonEquilibriaStayNonEquilibria) {
  const StrategyGrid coarse;
  const StrategyGrid fine{129, 65};
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<int> ti(0, coarse.theta_steps - 1);
  std::uniform_int_distribution<int> pj(0, coarse.phi_steps - 1);
  for (const double gamma : {0.1, 0.5, 0.6, 1.0, kHalfPi}) {
    const Game game = game_at(gamma);
    int strict = 0;
    for (int k = 0; k < 12; ++k) {
      const auto a = coarse.at(ti(rng), pj(rng));
      const auto b = coarse.at(ti(rng), pj(rng));
      ASSERT_TRUE(fine.index_of(a).has_value());
      const auto c = is_nash(game, a, b, coarse);
      if (c.max_unilateral_gain > 10 * kDefaultEpsilon) {
        ++strict;
        EXPECT_FALSE(is_nash(game, a, b, fine).nash);
      }
    }
    EXPECT_GT(strict, 0);
  }
}

TEST(ThresholdSweep, RecoversBothThresholds) {
  const auto sweep = threshold_sweep(GameConfig{});
  ASSERT_TRUE(sweep.gamma1.has_value());
  ASSERT_TRUE(sweep.gamma2.has_value());
  EXPECT_NEAR(*sweep.gamma1, kGamma1, 0.01);
  EXPECT_NEAR(*sweep.gamma2, kGamma2, 0.01);
  ASSERT_EQ(sweep.samples.size(), 50u);
  EXPECT_EQ(sweep.samples.front().gamma, 0.0);
  EXPECT_EQ(sweep.samples.back().gamma, kHalfPi);
  int rank = 0;
  for (const auto& s : sweep.samples) {
    const int r = static_cast<int>(s.region);
    EXPECT_GE(r, rank);
    rank = r;
    if (s.gamma > *sweep.gamma1 && s.gamma < *sweep.gamma2) {
      EXPECT_EQ(s.region, Region::kIntermediate);
    }
  }
  EXPECT_EQ(sweep.samples.front().region, Region::kClassical);
  EXPECT_EQ(sweep.samples.back().region, Region::kFullyQuantum);
}

TEST(ThresholdSweep, StableUnderGridDoubling) {
  const auto coarse = threshold_sweep(GameConfig{});
  SweepOptions fine;
  fine.grid = {129, 65};
  const auto refined = threshold_sweep(GameConfig{}, fine);
  ASSERT_TRUE(refined.gamma1 && refined.gamma2);
  EXPECT_LT(std::abs(*refined.gamma1 - *coarse.gamma1), 0.005);
  EXPECT_LT(std::abs(*refined.gamma2 - *coarse.gamma2), 0.005);
}

TEST(ThresholdSweep, SubRangeAndErrors) {
  SweepOptions opts;
  opts.gamma_from = 0.5;
  opts.gamma_to = 0.6;
  opts.samples = 5;
  const auto sweep = threshold_sweep(GameConfig{}, opts);
  EXPECT_FALSE(sweep.gamma1.has_value());
  EXPECT_FALSE(sweep.gamma2.has_value());
  for (const auto& s : sweep.samples) EXPECT_EQ(s.region, Region::kIntermediate);

  opts.gamma_to = 2.0;
  EXPECT_THROW(threshold_sweep(GameConfig{}, opts), std::invalid_argument);
  opts.gamma_to = 0.6;
  opts.samples = 1;
  EXPECT_THROW(threshold_sweep(GameConfig{}, opts), std::invalid_argument);
}

TEST(ThresholdSweep, DegenerateTableIsReported) {
  GameConfig flat;
  for (auto& e : flat.payoffs.entries) e = {1, 1};
  SweepOptions opts;
  opts.samples = 4;
  opts.grid = {5, 3};
  try {
    threshold_sweep(flat, opts);
    FAIL() << "expected SweepError";
  } catch (const SweepError& e) {
    ASSERT_EQ(e.samples().size(), 1u);
    EXPECT_TRUE(e.samples()[0].dd_nash);
    EXPECT_TRUE(e.samples()[0].qq_nash);
  }
}

TEST(Region, Names) {
  EXPECT_EQ(to_string(Region::kClassical), "classical");
  EXPECT_EQ(to_string(Region::kIntermediate), "intermediate");
  EXPECT_EQ(to_string(Region::kFullyQuantum), "fully-quantum");
}

}  // namespace
}  // namespace qpd::equilibrium
