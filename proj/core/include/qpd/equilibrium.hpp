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

// Grid-relative best responses, Nash certificates, and the entanglement
// sweep that locates the classical / intermediate / fully-quantum regions.
//
// All equilibria are certified only against deviations on a finite grid over
// [0, pi] x [0, pi/2].

#ifndef QPD_EQUILIBRIUM_HPP_
#define QPD_EQUILIBRIUM_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpd/game.hpp"
#include "qpd/strategy.hpp"

namespace qpd::equilibrium {

inline constexpr double kDefaultEpsilon = 1e-6;
// Payoff differences below this are ties; ties go to the lowest grid index.
inline constexpr double kTieTolerance = 1e-12;

struct StrategyGrid {
  int theta_steps = 65;
  int phi_steps = 33;

  // Throws std::invalid_argument unless both step counts are >= 3.
  void validate() const;
  int size() const { return theta_steps * phi_steps; }
  StrategyParams at(int theta_index, int phi_index) const;
  StrategyParams at(int flat_index) const;
  // Exact grid membership (within 1e-12 rad).
  std::optional<int> index_of(const StrategyParams& s) const;
  game::LandscapeGrid landscape_grid() const {
    return {theta_steps, phi_steps};
  }
};

struct BestResponse {
  StrategyParams strategy;
  int theta_index = 0;
  int phi_index = 0;
  double payoff = 0.0;
};

BestResponse best_response(const game::Game& game,
                           const StrategyParams& opponent,
                           const StrategyGrid& grid = {},
                           game::Player mover = game::Player::kAlice);

struct NashCheck {
  bool nash = false;
  double max_unilateral_gain = 0.0;
  double gain_a = 0.0;
  double gain_b = 0.0;
};

// Unilateral deviations of either player over the grid.
NashCheck is_nash(const game::Game& game, const StrategyParams& a,
                  const StrategyParams& b, const StrategyGrid& grid = {},
                  double epsilon = kDefaultEpsilon);

struct Equilibrium {
  StrategyParams a;
  StrategyParams b;
  int a_index = 0;
  int b_index = 0;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  double max_unilateral_gain = 0.0;
};

struct NashReport {
  double gamma = 0.0;
  StrategyGrid grid;
  double epsilon = kDefaultEpsilon;
  std::vector<Equilibrium> equilibria;  // ordered by (a_index, b_index)

  bool contains(const StrategyParams& a, const StrategyParams& b) const;
};

// Exhaustive scan of all grid pairs.
NashReport find_equilibria(const game::Game& game,
                           const StrategyGrid& grid = {},
                           double epsilon = kDefaultEpsilon);

enum class Region { kClassical, kIntermediate, kFullyQuantum };

std::string to_string(Region region);

struct SweepSample {
  double gamma = 0.0;
  Region region = Region::kClassical;
  bool dd_nash = false;
  bool qq_nash = false;
};

struct ThresholdSweep {
  std::vector<SweepSample> samples;
  std::optional<double> gamma1;  // (D, D) stops being Nash
  std::optional<double> gamma2;  // (Q, Q) becomes Nash
  StrategyGrid grid;
  double epsilon = kDefaultEpsilon;
  double bisection_tol = 0.0;
};

struct SweepOptions {
  double gamma_from = 0.0;
  double gamma_to = kHalfPi;
  int samples = 50;
  StrategyGrid grid;
  double epsilon = kDefaultEpsilon;
  double bisection_tol = 1e-6;
};

// Raised when sample labels are not classical -> intermediate ->
// fully-quantum in order; `samples` holds what was computed.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, std::vector<SweepSample> samples)
      : std::runtime_error(what), samples_(std::move(samples)) {}
  const std::vector<SweepSample>& samples() const { return samples_; }

 private:
  std::vector<SweepSample> samples_;
};

// Labels each sample by the Nash status of (D, D) and (Q, Q) and bisects
// both transitions. `base` supplies the payoff table; its gamma is ignored
// and its backend is used for every sample.
ThresholdSweep threshold_sweep(const game::GameConfig& base,
                               const SweepOptions& options = {});

}  // namespace qpd::equilibrium

#endif  // QPD_EQUILIBRIUM_HPP_
