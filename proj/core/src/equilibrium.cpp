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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qpd::equilibrium {

namespace {

using game::Game;
using game::Player;

// Payoffs for grid strategy pairs; the qubit backend reuses precomputed
// strategy matrices.
class PairEvaluator {
 public:
  PairEvaluator(const Game& game, const StrategyGrid& grid) : game_(game) {
    grid.validate();
    strategies_.reserve(static_cast<std::size_t>(grid.size()));
    matrices_.reserve(static_cast<std::size_t>(grid.size()));
    for (int k = 0; k < grid.size(); ++k) {
      strategies_.push_back(grid.at(k));
      matrices_.push_back(strategy_matrix(strategies_.back()));
    }
  }

  std::size_t size() const { return strategies_.size(); }
  const StrategyParams& strategy(std::size_t k) const { return strategies_[k]; }

  std::pair<double, double> payoffs(std::size_t a, std::size_t b) const {
    return payoffs(strategies_[a], matrices_[a], strategies_[b], matrices_[b]);
  }

  // Grid strategy `k` for the mover against an arbitrary fixed opponent.
  double mover_payoff(std::size_t k, const StrategyParams& opponent,
                      const Eigen::Matrix2cd& opponent_matrix,
                      Player mover) const {
    if (mover == Player::kAlice) {
      return payoffs(strategies_[k], matrices_[k], opponent, opponent_matrix)
          .first;
    }
    return payoffs(opponent, opponent_matrix, strategies_[k], matrices_[k])
        .second;
  }

  std::pair<double, double> payoffs(const StrategyParams& sa,
                                    const Eigen::Matrix2cd& ua,
                                    const StrategyParams& sb,
                                    const Eigen::Matrix2cd& ub) const {
    if (game_.config().backend == game::Backend::kQubit) {
      return game_.expected_payoffs(game_.distribution(ua, ub));
    }
    const auto r = game_.play(sa, sb);
    return {r.payoff_a, r.payoff_b};
  }

 private:
  const Game& game_;
  std::vector<StrategyParams> strategies_;
  std::vector<Eigen::Matrix2cd> matrices_;
};

double best_deviation(const PairEvaluator& eval, const StrategyParams& opponent,
                      Player mover) {
  const Eigen::Matrix2cd m = strategy_matrix(opponent);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < eval.size(); ++k) {
    best = std::max(best, eval.mover_payoff(k, opponent, m, mover));
  }
  return best;
}

int region_rank(Region r) { return static_cast<int>(r); }

}  // namespace

void StrategyGrid::validate() const {
  if (theta_steps < 3 || phi_steps < 3) {
    std::ostringstream msg;
    msg << "strategy grid " << theta_steps << "x" << phi_steps
        << " is too coarse (need >= 3 steps per axis)";
    throw std::invalid_argument(msg.str());
  }
}

StrategyParams StrategyGrid::at(int theta_index, int phi_index) const {
  const auto g = landscape_grid();
  return {g.theta_at(theta_index), g.phi_at(phi_index)};
}

StrategyParams StrategyGrid::at(int flat_index) const {
  return at(flat_index / phi_steps, flat_index % phi_steps);
}

std::optional<int> StrategyGrid::index_of(const StrategyParams& s) const {
  const double ti = s.theta / kPi * (theta_steps - 1);
  const double pj = s.phi / kHalfPi * (phi_steps - 1);
  const int i = static_cast<int>(std::lround(ti));
  const int j = static_cast<int>(std::lround(pj));
  if (i < 0 || i >= theta_steps || j < 0 || j >= phi_steps) return std::nullopt;
  const StrategyParams p = at(i, j);
  if (std::abs(p.theta - s.theta) > 1e-12 || std::abs(p.phi - s.phi) > 1e-12) {
    return std::nullopt;
  }
  return i * phi_steps + j;
}

BestResponse best_response(const Game& game, const StrategyParams& opponent,
                           const StrategyGrid& grid, Player mover) {
  const PairEvaluator eval(game, grid);
  const Eigen::Matrix2cd m = strategy_matrix(opponent);
  BestResponse best;
  best.payoff = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < eval.size(); ++k) {
    const double value = eval.mover_payoff(k, opponent, m, mover);
    if (value > best.payoff + kTieTolerance) {
      best.payoff = value;
      best.strategy = eval.strategy(k);
      best.theta_index = static_cast<int>(k) / grid.phi_steps;
      best.phi_index = static_cast<int>(k) % grid.phi_steps;
    }
  }
  return best;
}

NashCheck is_nash(const Game& game, const StrategyParams& a,
                  const StrategyParams& b, const StrategyGrid& grid,
                  double epsilon) {
  const PairEvaluator eval(game, grid);
  const auto [pa, pb] =
      eval.payoffs(a, strategy_matrix(a), b, strategy_matrix(b));
  NashCheck check;
  check.gain_a = best_deviation(eval, b, Player::kAlice) - pa;
  check.gain_b = best_deviation(eval, a, Player::kBob) - pb;
  check.max_unilateral_gain = std::max({check.gain_a, check.gain_b, 0.0});
  check.nash = check.max_unilateral_gain <= epsilon;
  return check;
}

bool NashReport::contains(const StrategyParams& a,
                          const StrategyParams& b) const {
  return std::any_of(equilibria.begin(), equilibria.end(),
                     [&](const Equilibrium& e) { return e.a == a && e.b == b; });
}

NashReport find_equilibria(const Game& game, const StrategyGrid& grid,
                           double epsilon) {
  const PairEvaluator eval(game, grid);
  const std::size_t n = eval.size();
  // Alice's best payoff against each Bob strategy, Bob's against each Alice.
  std::vector<double> best_a(n, -std::numeric_limits<double>::infinity());
  std::vector<double> best_b(n, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto [pa, pb] = eval.payoffs(i, j);
      best_a[j] = std::max(best_a[j], pa);
      best_b[i] = std::max(best_b[i], pb);
    }
  }
  NashReport report;
  report.gamma = game.config().gamma;
  report.grid = grid;
  report.epsilon = epsilon;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto [pa, pb] = eval.payoffs(i, j);
      const double gain = std::max({best_a[j] - pa, best_b[i] - pb, 0.0});
      if (gain <= epsilon) {
        report.equilibria.push_back(Equilibrium{
            eval.strategy(i), eval.strategy(j), static_cast<int>(i),
            static_cast<int>(j), pa, pb, gain});
      }
    }
  }
  return report;
}

std::string to_string(Region region) {
  switch (region) {
    case Region::kClassical:
      return "classical";
    case Region::kIntermediate:
      return "intermediate";
    case Region::kFullyQuantum:
      return "fully-quantum";
  }
  return "unknown";
}

ThresholdSweep threshold_sweep(const game::GameConfig& base,
                               const SweepOptions& options) {
  options.grid.validate();
  if (options.samples < 2) {
    throw std::invalid_argument("threshold sweep needs >= 2 samples");
  }
  if (!(options.gamma_from >= 0.0 && options.gamma_to <= kHalfPi &&
        options.gamma_from < options.gamma_to)) {
    throw std::invalid_argument("sweep range must satisfy 0 <= from < to <= pi/2");
  }
  if (!(options.bisection_tol > 0.0)) {
    throw std::invalid_argument("bisection tolerance must be positive");
  }

  const auto config_at = [&](double gamma) {
    game::GameConfig c = base;
    c.gamma = gamma;
    return c;
  };
  const auto dd_nash = [&](double gamma) {
    return is_nash(Game(config_at(gamma)), kDefect, kDefect, options.grid,
                   options.epsilon)
        .nash;
  };
  const auto qq_nash = [&](double gamma) {
    return is_nash(Game(config_at(gamma)), kQuantum, kQuantum, options.grid,
                   options.epsilon)
        .nash;
  };

  ThresholdSweep sweep;
  sweep.grid = options.grid;
  sweep.epsilon = options.epsilon;
  sweep.bisection_tol = options.bisection_tol;

  const double span = options.gamma_to - options.gamma_from;
  for (int k = 0; k < options.samples; ++k) {
    SweepSample s;
    s.gamma = k == options.samples - 1
                  ? options.gamma_to
                  : options.gamma_from + span * k / (options.samples - 1);
    const Game g(config_at(s.gamma));
    s.dd_nash = is_nash(g, kDefect, kDefect, options.grid, options.epsilon).nash;
    s.qq_nash =
        is_nash(g, kQuantum, kQuantum, options.grid, options.epsilon).nash;
    if (s.dd_nash && s.qq_nash) {
      std::ostringstream msg;
      msg << "both (D,D) and (Q,Q) are Nash at gamma=" << s.gamma;
      sweep.samples.push_back(s);
      throw SweepError(msg.str(), sweep.samples);
    }
    s.region = s.dd_nash   ? Region::kClassical
               : s.qq_nash ? Region::kFullyQuantum
                           : Region::kIntermediate;
    if (!sweep.samples.empty() &&
        region_rank(s.region) < region_rank(sweep.samples.back().region)) {
      std::ostringstream msg;
      msg << "region labels are not monotone at gamma=" << s.gamma << " ("
          << to_string(sweep.samples.back().region) << " -> "
          << to_string(s.region) << "); grid too coarse?";
      sweep.samples.push_back(s);
      throw SweepError(msg.str(), sweep.samples);
    }
    sweep.samples.push_back(s);
  }

  // Bisect [lo, hi] where pred(lo) != pred(hi).
  const auto bisect = [&](auto&& pred, double lo, double hi) {
    const bool at_lo = pred(lo);
    while (hi - lo > options.bisection_tol) {
      const double mid = 0.5 * (lo + hi);
      if (pred(mid) == at_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  for (std::size_t k = 0; k + 1 < sweep.samples.size(); ++k) {
    const auto& s0 = sweep.samples[k];
    const auto& s1 = sweep.samples[k + 1];
    if (!sweep.gamma1 && s0.dd_nash && !s1.dd_nash) {
      sweep.gamma1 = bisect(dd_nash, s0.gamma, s1.gamma);
    }
    if (!sweep.gamma2 && !s0.qq_nash && s1.qq_nash) {
      sweep.gamma2 = bisect(qq_nash, s0.gamma, s1.gamma);
    }
  }
  return sweep;
}

}  // namespace qpd::equilibrium
