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

// The two-player quantum prisoner's dilemma: J -> (U_A (x) U_B) -> J^dagger
// -> measurement in the {C, D} basis, with a 4-dim qubit backend and a full
// Fock-space optical backend.

#ifndef QPD_GAME_HPP_
#define QPD_GAME_HPP_

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qpd/fock.hpp"
#include "qpd/optics.hpp"
#include "qpd/strategy.hpp"

namespace qpd::game {

// Outcome order used throughout: CC, CD, DC, DD (Alice's choice first).
enum Outcome : int { kCC = 0, kCD = 1, kDC = 2, kDD = 3 };
inline constexpr std::array<const char*, 4> kOutcomeNames{"CC", "CD", "DC",
                                                          "DD"};

struct Payoff {
  double alice = 0.0;
  double bob = 0.0;
  friend bool operator==(const Payoff&, const Payoff&) = default;
};

struct PayoffTable {
  std::array<Payoff, 4> entries{{{3, 3}, {0, 5}, {5, 0}, {1, 1}}};

  static PayoffTable prisoners_dilemma() { return {}; }
  // True when swapping players maps the table onto itself.
  bool symmetric() const;
  double min_payoff() const;
  double max_payoff() const;
  friend bool operator==(const PayoffTable&, const PayoffTable&) = default;
};

enum class Backend { kQubit, kOptical };

std::string to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

struct GameConfig {
  double gamma = 0.0;  // [0, pi/2]
  PayoffTable payoffs;
  Backend backend = Backend::kQubit;
  double jgate_tol = 1e-8;  // optical backend: J-gate solver acceptance
};

struct OutcomeDistribution {
  std::array<double, 4> p{};

  double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

struct GameResult {
  OutcomeDistribution distribution;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  Backend backend = Backend::kQubit;
  double leakage = 0.0;  // optical backend only
};

using TwoQubitState = std::array<std::complex<double>, 4>;

// (cos(gamma/2), 0, 0, i sin(gamma/2)). Throws for gamma outside [0, pi/2].
TwoQubitState initial_state(double gamma);

// exp[i (gamma/2) D (x) D] on the dual-rail block.
Eigen::Matrix4cd entangler(double gamma);

// Thrown by the optical backend when no J-gate decomposition is available.
class UnsolvedJGateError : public std::logic_error {
 public:
  UnsolvedJGateError(const std::string& what, double residual)
      : std::logic_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Game at a fixed entanglement. The optical backend solves the J-gate
// phases and assembles J and J^dagger once at construction.
class Game {
 public:
  explicit Game(GameConfig config);

  const GameConfig& config() const { return config_; }
  const std::optional<optics::JGatePhases>& jgate_phases() const {
    return phases_;
  }

  GameResult play(const StrategyParams& a, const StrategyParams& b) const;

  // Qubit-backend distribution without payoff bookkeeping (hot path for the
  // equilibrium scans).
  OutcomeDistribution distribution(const Eigen::Matrix2cd& ua,
                                   const Eigen::Matrix2cd& ub) const;

  std::pair<double, double> expected_payoffs(
      const OutcomeDistribution& d) const;

 private:
  GameResult play_qubit(const StrategyParams& a, const StrategyParams& b) const;
  GameResult play_optical(const StrategyParams& a,
                          const StrategyParams& b) const;

  GameConfig config_;
  Eigen::Matrix4cd j_;
  Eigen::Matrix4cd j_dagger_;
  Eigen::Vector4cd entangled_;
  std::optional<optics::JGatePhases> phases_;
  std::optional<fock::OperatorMatrix> optical_j_;
  std::optional<fock::OperatorMatrix> optical_j_dagger_;
};

GameResult play(const GameConfig& config, const StrategyParams& a,
                const StrategyParams& b);

enum class Player { kAlice, kBob };

// theta in [0, pi], phi in [0, pi/2], both endpoints inclusive.
struct LandscapeGrid {
  int theta_steps = 65;
  int phi_steps = 33;

  double theta_at(int i) const;
  double phi_at(int j) const;
};

struct Landscape {
  LandscapeGrid grid;
  std::vector<double> theta_axis;
  std::vector<double> phi_axis;
  std::vector<double> payoff;  // row-major: theta index major

  double at(int i, int j) const {
    return payoff[static_cast<std::size_t>(i * grid.phi_steps + j)];
  }
  double max() const;
  double min() const;
};

// Expected payoff of the moving player over the grid against a fixed
// opponent. Throws std::invalid_argument for grids smaller than 2x2.
Landscape payoff_landscape(const Game& game, const StrategyParams& opponent,
                           LandscapeGrid grid = {},
                           Player mover = Player::kAlice);

}  // namespace qpd::game

#endif  // QPD_GAME_HPP_
