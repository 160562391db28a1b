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

// Optical elements as Fock-sector unitaries, the circuits that realize the
// player strategy and the entangling J gate, and their verifiers.
//
// Conventions (all exact on every photon-number sector):
//   BeamSplitter(theta)      exp[-i (theta/2) (a_i^+ a_j + a_j^+ a_i)]
//   PhaseShifter(phi)        exp[i phi n]
//   ConjugatePhasePair(phi)  exp[i phi n_i] exp[-i phi n_j]
//   CrossKerr(chi)           exp[-i chi n_i n_j]
//   Mirror                   identity
// so that on a dual-rail qubit B(theta)|C> = cos(theta/2)|C> - i
// sin(theta/2)|D>.

#ifndef QPD_OPTICS_HPP_
#define QPD_OPTICS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpd/fock.hpp"
#include "qpd/strategy.hpp"

namespace qpd::optics {

struct ModePair {
  int first = 0;
  int second = 1;
  friend bool operator==(const ModePair&, const ModePair&) = default;
};

inline constexpr ModePair kAlicePair{fock::kModeA, fock::kModeB};
inline constexpr ModePair kBobPair{fock::kModeC, fock::kModeD};
inline constexpr ModePair kKerrPair{fock::kModeA, fock::kModeD};

struct BeamSplitter {
  ModePair modes;
  double theta = 0.0;
};
struct PhaseShifter {
  int mode = 0;
  double phi = 0.0;
};
struct ConjugatePhasePair {
  ModePair modes;
  double phi = 0.0;
};
struct CrossKerr {
  ModePair modes;
  double chi = 0.0;
};
struct Mirror {
  int mode = 0;
};

using OpticalElement = std::variant<BeamSplitter, PhaseShifter,
                                    ConjugatePhasePair, CrossKerr, Mirror>;

// Element realizing the inverse unitary (angle negated).
OpticalElement inverse(const OpticalElement& element);

// Transparency cos^2(theta/2).
double transparency(const BeamSplitter& bs);

struct Circuit {
  std::vector<OpticalElement> elements;  // temporal order, first applied first
  std::string label;
  std::vector<std::string> warnings;
};

// Reverses the element list and inverts every element.
Circuit inverse(const Circuit& circuit);

fock::OperatorMatrix element_unitary(const OpticalElement& element,
                                     fock::Sector sector);

// Product of the element unitaries, last element leftmost.
fock::OperatorMatrix circuit_unitary(const Circuit& circuit,
                                     fock::Sector sector);

// B(pi/2) -> P(-h, h) -> B(-pi/2); equals exp[-h (a^+ b - b^+ a)] on the
// pair, i.e. a y rotation whose matrix on {|C>, |D>} is
// [[cos h, -sin h], [sin h, cos h]].
Circuit rotation_y_circuit(double half_angle, ModePair modes);

// P(pi/4, -pi/4) -> rotation_y_circuit(-h) -> P(-pi/4, pi/4); equals
// exp[-i h (a^+ b + b^+ a)] on the pair.
Circuit rotation_x_circuit(double half_angle, ModePair modes);

// P(phi, 0) -> U_y(-theta/2) -> P(0, -phi) with mirrors folding the two
// interferometer arms. Its dual-rail action is exactly strategy_matrix(s).
// Out-of-range parameters are accepted and reported in `warnings`.
Circuit strategy_circuit(double theta, double phi, ModePair modes);
Circuit strategy_circuit(const StrategyParams& s, ModePair modes);

// exp[+i (gamma/2) (a^+ b - a b^+)(c^+ d - c d^+)]: J|CC> = cos(gamma/2)|CC>
// + i sin(gamma/2)|DD>.
fock::OperatorMatrix jgate_target(double gamma,
                                  fock::Sector sector = fock::kGameSector);

// Mode pairs carrying the two J-gate phase pairs: one per player (theta1 on
// (a, b), theta2 on (c, d)), or one per arm set (theta1 on the Kerr-coupled
// arms (a, d), theta2 on the free arms (b, c)).
enum class PhaseAssignment { kPerPlayer, kArmSets };

std::string to_string(PhaseAssignment assignment);
std::optional<PhaseAssignment> parse_phase_assignment(std::string_view name);

struct PhasePairModes {
  ModePair first;
  ModePair second;
};
PhasePairModes phase_pair_modes(PhaseAssignment assignment);

struct JGatePhases {
  double gamma = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  PhaseAssignment assignment = PhaseAssignment::kPerPlayer;
  double kerr_multiplier = 1.0;  // Kerr strength chi = multiplier * gamma
  double residual = 0.0;
  bool valid = false;

  double kerr_strength() const { return kerr_multiplier * gamma; }
};

// B1(pi/2) on (a,b), B2(pi/2) on (c,d), Kerr on (a,d), phase pairs theta1
// and theta2 (placed per `assignment`), then B3(-pi/2), B4(-pi/2). Throws
// std::logic_error when `phases` is not marked valid.
Circuit jgate_circuit(const JGatePhases& phases);

// Same element list without the validity precondition (used by the solver
// and for inspecting failed candidates).
Circuit jgate_circuit_unchecked(
    double gamma, double theta1, double theta2, double kerr_multiplier,
    PhaseAssignment assignment = PhaseAssignment::kPerPlayer);

struct SolverOptions {
  int grid_points = 181;         // per axis over [-pi, pi], inclusive
  double min_step = 1e-10;       // coordinate-descent termination step
  std::vector<double> kerr_multipliers{1.0, -1.0, 2.0, -2.0,
                                       0.5, -0.5, 4.0, -4.0};
};

// Finds (theta1, theta2), and if needed the Kerr strength mapping, so that
// jgate_circuit matches jgate_target on the dual-rail block up to global
// phase. The literal mapping chi = gamma is tried first, and the per-player
// phase assignment before the arm-set one. If nothing reaches `tol` the best
// candidate is returned with valid = false.
JGatePhases solve_jgate_phases(double gamma, double tol = 1e-8,
                               const SolverOptions& options = {});

// Dual-rail block of the assembled circuit and its global-phase distance to
// the target block.
fock::PhaseMatch verify_jgate(const JGatePhases& phases, double tol);

struct CommutatorReport {
  double gamma = 0.0;
  double dd = 0.0;  // |[J, D (x) D]|_max
  double cd = 0.0;  // |[J, C (x) D]|_max
  double dc = 0.0;  // |[J, D (x) C]|_max
  double cc = 0.0;  // |[J, C (x) C]|_max

  double worst() const;
};

CommutatorReport verify_commutators(double gamma);

// Residual of strategy_circuit against strategy_matrix on one pair's
// dual-rail qubit (the other pair in |C>), plus leakage out of the dual-rail
// subspace.
struct StrategyCheck {
  fock::PhaseMatch match;
  double leakage = 0.0;
};
StrategyCheck verify_strategy(const StrategyParams& s, double tol);

// Matrix of a two-mode circuit restricted to the one-photon sector
// {|1,0>, |0,1>}.
Eigen::Matrix2cd single_photon_matrix(const Circuit& circuit);

}  // namespace qpd::optics

#endif  // QPD_OPTICS_HPP_
