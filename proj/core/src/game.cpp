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

#include "qpd/game.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qpd::game {

namespace {

using Complex = std::complex<double>;

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= kHalfPi)) {
    std::ostringstream msg;
    msg << "gamma=" << gamma << " outside [0, pi/2]";
    throw std::invalid_argument(msg.str());
  }
}

// (U_A (x) U_B) v without forming the 4x4 product.
Eigen::Vector4cd apply_local(const Eigen::Matrix2cd& ua,
                             const Eigen::Matrix2cd& ub,
                             const Eigen::Vector4cd& v) {
  Eigen::Vector4cd out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Complex acc = 0.0;
      for (int a2 = 0; a2 < 2; ++a2) {
        const Complex ua_entry = ua(a, a2);
        acc += ua_entry * (ub(b, 0) * v(2 * a2) + ub(b, 1) * v(2 * a2 + 1));
      }
      out(2 * a + b) = acc;
    }
  }
  return out;
}

}  // namespace

bool PayoffTable::symmetric() const {
  return entries[kCC].alice == entries[kCC].bob &&
         entries[kDD].alice == entries[kDD].bob &&
         entries[kCD].alice == entries[kDC].bob &&
         entries[kCD].bob == entries[kDC].alice;
}

double PayoffTable::min_payoff() const {
  double lo = entries[0].alice;
  for (const auto& e : entries) lo = std::min({lo, e.alice, e.bob});
  return lo;
}

double PayoffTable::max_payoff() const {
  double hi = entries[0].alice;
  for (const auto& e : entries) hi = std::max({hi, e.alice, e.bob});
  return hi;
}

std::string to_string(Backend backend) {
  return backend == Backend::kQubit ? "qubit" : "optical";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "qubit") return Backend::kQubit;
  if (name == "optical") return Backend::kOptical;
  return std::nullopt;
}

TwoQubitState initial_state(double gamma) {
  check_gamma(gamma);
  return {Complex(std::cos(gamma / 2.0), 0.0), 0.0, 0.0,
          Complex(0.0, std::sin(gamma / 2.0))};
}

Eigen::Matrix4cd entangler(double gamma) {
  // (D (x) D)^2 = I, so exp(i x D(x)D) = cos x I + i sin x D(x)D.
  const Eigen::Matrix2cd d = strategy_matrix(kDefect);
  const Eigen::Matrix4cd dd = kron(d, d);
  const double x = gamma / 2.0;
  return std::cos(x) * Eigen::Matrix4cd::Identity() +
         Complex(0.0, std::sin(x)) * dd;
}

Game::Game(GameConfig config) : config_(config) {
  check_gamma(config_.gamma);
  j_ = entangler(config_.gamma);
  j_dagger_ = j_.adjoint();
  const auto psi0 = initial_state(config_.gamma);
  entangled_ << psi0[0], psi0[1], psi0[2], psi0[3];

  if (config_.backend == Backend::kOptical) {
    phases_ = optics::solve_jgate_phases(config_.gamma, config_.jgate_tol);
    if (phases_->valid) {
      const auto circuit = optics::jgate_circuit(*phases_);
      optical_j_ = optics::circuit_unitary(circuit, fock::kGameSector);
      optical_j_dagger_ =
          optics::circuit_unitary(optics::inverse(circuit), fock::kGameSector);
    }
  }
}

OutcomeDistribution Game::distribution(const Eigen::Matrix2cd& ua,
                                       const Eigen::Matrix2cd& ub) const {
  const Eigen::Vector4cd out = j_dagger_ * apply_local(ua, ub, entangled_);
  OutcomeDistribution d;
  for (int k = 0; k < 4; ++k) d.p[static_cast<std::size_t>(k)] = std::norm(out(k));
  return d;
}

std::pair<double, double> Game::expected_payoffs(
    const OutcomeDistribution& d) const {
  double a = 0.0;
  double b = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    a += d.p[k] * config_.payoffs.entries[k].alice;
    b += d.p[k] * config_.payoffs.entries[k].bob;
  }
  return {a, b};
}

GameResult Game::play(const StrategyParams& a, const StrategyParams& b) const {
  return config_.backend == Backend::kQubit ? play_qubit(a, b)
                                            : play_optical(a, b);
}

GameResult Game::play_qubit(const StrategyParams& a,
                            const StrategyParams& b) const {
  GameResult r;
  r.backend = Backend::kQubit;
  r.distribution = distribution(strategy_matrix(a), strategy_matrix(b));
  std::tie(r.payoff_a, r.payoff_b) = expected_payoffs(r.distribution);
  return r;
}

GameResult Game::play_optical(const StrategyParams& a,
                              const StrategyParams& b) const {
  if (!optical_j_) {
    std::ostringstream msg;
    msg << "no J-gate decomposition for gamma=" << config_.gamma
        << " (residual " << phases_->residual << ")";
    throw UnsolvedJGateError(msg.str(), phases_->residual);
  }
  const auto alice = optics::circuit_unitary(
      optics::strategy_circuit(a, optics::kAlicePair), fock::kGameSector);
  const auto bob = optics::circuit_unitary(
      optics::strategy_circuit(b, optics::kBobPair), fock::kGameSector);
  const auto pipeline =
      fock::compose({*optical_j_dagger_, bob, alice, *optical_j_});
  const auto input = fock::StateVector::basis_state(
      fock::kGameSector, std::span<const int>(fock::kDualRailOccupations[0]));
  const auto projected = fock::project_dual_rail(fock::apply(pipeline, input));

  GameResult r;
  r.backend = Backend::kOptical;
  for (std::size_t k = 0; k < 4; ++k) {
    r.distribution.p[k] = std::norm(projected.amplitudes[k]);
  }
  r.leakage = projected.leakage;
  std::tie(r.payoff_a, r.payoff_b) = expected_payoffs(r.distribution);
  return r;
}

GameResult play(const GameConfig& config, const StrategyParams& a,
                const StrategyParams& b) {
  return Game(config).play(a, b);
}

double LandscapeGrid::theta_at(int i) const {
  return kPi * static_cast<double>(i) / static_cast<double>(theta_steps - 1);
}

double LandscapeGrid::phi_at(int j) const {
  return kHalfPi * static_cast<double>(j) / static_cast<double>(phi_steps - 1);
}

double Landscape::max() const {
  return *std::max_element(payoff.begin(), payoff.end());
}

double Landscape::min() const {
  return *std::min_element(payoff.begin(), payoff.end());
}

Landscape payoff_landscape(const Game& game, const StrategyParams& opponent,
                           LandscapeGrid grid, Player mover) {
  if (grid.theta_steps < 2 || grid.phi_steps < 2) {
    throw std::invalid_argument("landscape grid must be at least 2x2");
  }
  Landscape out;
  out.grid = grid;
  for (int i = 0; i < grid.theta_steps; ++i) out.theta_axis.push_back(grid.theta_at(i));
  for (int j = 0; j < grid.phi_steps; ++j) out.phi_axis.push_back(grid.phi_at(j));
  out.payoff.reserve(static_cast<std::size_t>(grid.theta_steps * grid.phi_steps));
  for (int i = 0; i < grid.theta_steps; ++i) {
    for (int j = 0; j < grid.phi_steps; ++j) {
      const StrategyParams s{out.theta_axis[static_cast<std::size_t>(i)],
                             out.phi_axis[static_cast<std::size_t>(j)]};
      if (mover == Player::kAlice) {
        out.payoff.push_back(game.play(s, opponent).payoff_a);
      } else {
        out.payoff.push_back(game.play(opponent, s).payoff_b);
      }
    }
  }
  return out;
}

}  // namespace qpd::game
