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

#include "qpd/optics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qpd::optics {

namespace {

using fock::Complex;
using fock::GeneratorMatrix;
using fock::Matrix;
using fock::OperatorMatrix;
using fock::PhaseSign;
using fock::Sector;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_pair(ModePair pair, Sector sector) {
  if (pair.first == pair.second || pair.first < 0 || pair.second < 0 ||
      pair.first >= sector.modes || pair.second >= sector.modes) {
    std::ostringstream msg;
    msg << "invalid mode pair (" << pair.first << ", " << pair.second
        << ") for a " << sector.modes << "-mode sector";
    throw std::invalid_argument(msg.str());
  }
}

void check_mode(int mode, Sector sector) {
  if (mode < 0 || mode >= sector.modes) {
    std::ostringstream msg;
    msg << "invalid mode " << mode << " for a " << sector.modes
        << "-mode sector";
    throw std::invalid_argument(msg.str());
  }
}

// Wraps into [-pi/2, pi/2): phase pairs have period pi on dual-rail qubits.
double wrap_half_period(double angle) {
  return angle - kPi * std::floor((angle + kHalfPi) / kPi);
}

// ||U - lambda V||_F with the Frobenius-optimal unit phase lambda, computed
// from the difference matrix to avoid cancellation near zero.
double phase_quotient_frobenius(const Eigen::Matrix4cd& u,
                                const Eigen::Matrix4cd& v) {
  const Complex overlap = (v.adjoint() * u).trace();
  const double mag = std::abs(overlap);
  const Complex lambda = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
  return (u - lambda * v).norm();
}

// Dual-rail phase of a conjugate pair on (i, j): exp[i phi (n_i - n_j)].
Eigen::Vector4cd pair_phase_diagonal(ModePair pair, double phi) {
  Eigen::Vector4cd diag;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& occ = fock::kDualRailOccupations[k];
    const int delta = occ[static_cast<std::size_t>(pair.first)] -
                      occ[static_cast<std::size_t>(pair.second)];
    diag(static_cast<Eigen::Index>(k)) = std::polar(1.0, phi * delta);
  }
  return diag;
}

struct Candidate {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double objective = std::numeric_limits<double>::infinity();
};

// Every element of the J-gate circuit maps the dual-rail subspace into
// itself, so the block of the circuit is the product of element blocks and
// the phase pairs can be swept without rebuilding the whole circuit.
class JGateObjective {
 public:
  JGateObjective(double gamma, double kerr_multiplier,
                 PhaseAssignment assignment)
      : target_(fock::dual_rail_block(jgate_target(gamma))),
        pairs_(phase_pair_modes(assignment)) {
    const Sector s = fock::kGameSector;
    const auto before = fock::compose({
        element_unitary(CrossKerr{kKerrPair, kerr_multiplier * gamma}, s),
        element_unitary(BeamSplitter{kBobPair, kHalfPi}, s),
        element_unitary(BeamSplitter{kAlicePair, kHalfPi}, s),
    });
    const auto after = fock::compose({
        element_unitary(BeamSplitter{kBobPair, -kHalfPi}, s),
        element_unitary(BeamSplitter{kAlicePair, -kHalfPi}, s),
    });
    before_ = fock::dual_rail_block(before);
    after_ = fock::dual_rail_block(after);
  }

  double operator()(double theta1, double theta2) const {
    const Eigen::Vector4cd phases =
        pair_phase_diagonal(pairs_.first, theta1)
            .cwiseProduct(pair_phase_diagonal(pairs_.second, theta2));
    const Eigen::Matrix4cd u = after_ * phases.asDiagonal() * before_;
    return phase_quotient_frobenius(u, target_);
  }

 private:
  Eigen::Matrix4cd target_;
  PhasePairModes pairs_;
  Eigen::Matrix4cd before_;
  Eigen::Matrix4cd after_;
};

Candidate coarse_scan(const JGateObjective& f, int points) {
  Candidate best;
  const double step = 2.0 * kPi / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    const double t1 = -kPi + step * i;
    for (int j = 0; j < points; ++j) {
      const double t2 = -kPi + step * j;
      const double value = f(t1, t2);
      if (value < best.objective) best = Candidate{t1, t2, value};
    }
  }
  return best;
}

Candidate refine(const JGateObjective& f, Candidate start, double initial_step,
                 double min_step) {
  Candidate best = start;
  double step = initial_step;
  while (step >= min_step) {
    bool improved = false;
    for (int coord = 0; coord < 2; ++coord) {
      for (const double dir : {1.0, -1.0}) {
        Candidate trial = best;
        (coord == 0 ? trial.theta1 : trial.theta2) += dir * step;
        trial.objective = f(trial.theta1, trial.theta2);
        if (trial.objective < best.objective) {
          best = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

OpticalElement inverse(const OpticalElement& element) {
  return std::visit(
      Overloaded{
          [](BeamSplitter e) -> OpticalElement {
            e.theta = -e.theta;
            return e;
          },
          [](PhaseShifter e) -> OpticalElement {
            e.phi = -e.phi;
            return e;
          },
          [](ConjugatePhasePair e) -> OpticalElement {
            e.phi = -e.phi;
            return e;
          },
          [](CrossKerr e) -> OpticalElement {
            e.chi = -e.chi;
            return e;
          },
          [](Mirror e) -> OpticalElement { return e; },
      },
      element);
}

double transparency(const BeamSplitter& bs) {
  const double c = std::cos(bs.theta / 2.0);
  return c * c;
}

Circuit inverse(const Circuit& circuit) {
  Circuit out;
  out.label = circuit.label + "^dagger";
  out.warnings = circuit.warnings;
  out.elements.reserve(circuit.elements.size());
  for (auto it = circuit.elements.rbegin(); it != circuit.elements.rend();
       ++it) {
    out.elements.push_back(inverse(*it));
  }
  return out;
}

OperatorMatrix element_unitary(const OpticalElement& element, Sector sector) {
  return std::visit(
      Overloaded{
          [&](const BeamSplitter& e) {
            check_pair(e.modes, sector);
            const auto g =
                fock::hopping_generator(sector, e.modes.first, e.modes.second,
                                        fock::HoppingSymmetry::kSymmetric);
            return fock::exponentiate(g, e.theta / 2.0, PhaseSign::kNegative);
          },
          [&](const PhaseShifter& e) {
            check_mode(e.mode, sector);
            return fock::exponentiate(fock::number_generator(sector, e.mode),
                                      e.phi, PhaseSign::kPositive);
          },
          [&](const ConjugatePhasePair& e) {
            check_pair(e.modes, sector);
            const Matrix diff =
                fock::number_generator(sector, e.modes.first).entries() -
                fock::number_generator(sector, e.modes.second).entries();
            const GeneratorMatrix g(sector, diff,
                                    fock::GeneratorKind::kHermitian);
            return fock::exponentiate(g, e.phi, PhaseSign::kPositive);
          },
          [&](const CrossKerr& e) {
            check_pair(e.modes, sector);
            const auto g = fock::cross_number_generator(sector, e.modes.first,
                                                        e.modes.second);
            return fock::exponentiate(g, e.chi, PhaseSign::kNegative);
          },
          [&](const Mirror& e) {
            check_mode(e.mode, sector);
            return OperatorMatrix::identity(sector);
          },
      },
      element);
}

OperatorMatrix circuit_unitary(const Circuit& circuit, Sector sector) {
  const auto dim = static_cast<Eigen::Index>(sector.dimension());
  Matrix total = Matrix::Identity(dim, dim);
  for (const auto& element : circuit.elements) {
    total = element_unitary(element, sector).entries() * total;
  }
  return OperatorMatrix(sector, std::move(total), true);
}

Circuit rotation_y_circuit(double half_angle, ModePair modes) {
  Circuit c;
  c.label = "U_y";
  c.elements = {
      BeamSplitter{modes, kHalfPi},
      ConjugatePhasePair{modes, -half_angle},
      BeamSplitter{modes, -kHalfPi},
  };
  return c;
}

Circuit rotation_x_circuit(double half_angle, ModePair modes) {
  Circuit c;
  c.label = "U_x";
  c.elements.push_back(ConjugatePhasePair{modes, kPi / 4.0});
  for (auto& e : rotation_y_circuit(-half_angle, modes).elements) {
    c.elements.push_back(e);
  }
  c.elements.push_back(ConjugatePhasePair{modes, -kPi / 4.0});
  return c;
}

Circuit strategy_circuit(double theta, double phi, ModePair modes) {
  Circuit c;
  c.label = "U(theta,phi)";
  if (!StrategyParams{theta, phi}.in_range()) {
    std::ostringstream msg;
    msg << "strategy (" << theta << ", " << phi
        << ") outside [0, pi] x [0, pi/2]";
    c.warnings.push_back(msg.str());
  }
  const Circuit ry = rotation_y_circuit(-theta / 2.0, modes);
  c.elements.push_back(PhaseShifter{modes.first, phi});
  c.elements.push_back(ry.elements[0]);
  c.elements.push_back(Mirror{modes.first});
  c.elements.push_back(Mirror{modes.second});
  c.elements.push_back(ry.elements[1]);
  c.elements.push_back(ry.elements[2]);
  c.elements.push_back(PhaseShifter{modes.second, -phi});
  return c;
}

Circuit strategy_circuit(const StrategyParams& s, ModePair modes) {
  return strategy_circuit(s.theta, s.phi, modes);
}

OperatorMatrix jgate_target(double gamma, Sector sector) {
  using fock::HoppingSymmetry;
  const auto alice = fock::hopping_generator(sector, fock::kModeA, fock::kModeB,
                                             HoppingSymmetry::kAntisymmetric);
  const auto bob = fock::hopping_generator(sector, fock::kModeC, fock::kModeD,
                                           HoppingSymmetry::kAntisymmetric);
  const auto product = fock::generator_product(alice, bob);
  return fock::exponentiate(product, gamma / 2.0, PhaseSign::kPositive);
}

std::string to_string(PhaseAssignment assignment) {
  return assignment == PhaseAssignment::kPerPlayer ? "per_player" : "arm_sets";
}

std::optional<PhaseAssignment> parse_phase_assignment(std::string_view name) {
  if (name == "per_player") return PhaseAssignment::kPerPlayer;
  if (name == "arm_sets") return PhaseAssignment::kArmSets;
  return std::nullopt;
}

PhasePairModes phase_pair_modes(PhaseAssignment assignment) {
  if (assignment == PhaseAssignment::kPerPlayer) {
    return {kAlicePair, kBobPair};
  }
  return {kKerrPair, ModePair{fock::kModeB, fock::kModeC}};
}

Circuit jgate_circuit_unchecked(double gamma, double theta1, double theta2,
                                double kerr_multiplier,
                                PhaseAssignment assignment) {
  const PhasePairModes pairs = phase_pair_modes(assignment);
  Circuit c;
  c.label = "J(gamma)";
  c.elements = {
      BeamSplitter{kAlicePair, kHalfPi},
      BeamSplitter{kBobPair, kHalfPi},
      Mirror{fock::kModeA},
      CrossKerr{kKerrPair, kerr_multiplier * gamma},
      Mirror{fock::kModeD},
      ConjugatePhasePair{pairs.first, theta1},
      ConjugatePhasePair{pairs.second, theta2},
      BeamSplitter{kAlicePair, -kHalfPi},
      BeamSplitter{kBobPair, -kHalfPi},
  };
  return c;
}

Circuit jgate_circuit(const JGatePhases& phases) {
  if (!phases.valid) {
    std::ostringstream msg;
    msg << "J-gate phases for gamma=" << phases.gamma
        << " are not solved (residual " << phases.residual << ")";
    throw std::logic_error(msg.str());
  }
  return jgate_circuit_unchecked(phases.gamma, phases.theta1, phases.theta2,
                                 phases.kerr_multiplier, phases.assignment);
}

fock::PhaseMatch verify_jgate(const JGatePhases& phases, double tol) {
  const auto circuit =
      jgate_circuit_unchecked(phases.gamma, phases.theta1, phases.theta2,
                              phases.kerr_multiplier, phases.assignment);
  const auto assembled =
      fock::dual_rail_block(circuit_unitary(circuit, fock::kGameSector));
  const auto target = fock::dual_rail_block(jgate_target(phases.gamma));
  return fock::equal_up_to_global_phase(Matrix(assembled), Matrix(target), tol);
}

JGatePhases solve_jgate_phases(double gamma, double tol,
                               const SolverOptions& options) {
  if (options.grid_points < 2 || options.kerr_multipliers.empty()) {
    throw std::invalid_argument("solver needs >= 2 grid points and a mapping");
  }
  JGatePhases best;
  best.gamma = gamma;
  best.residual = std::numeric_limits<double>::infinity();
  const double grid_step = 2.0 * kPi / (options.grid_points - 1);
  for (const auto assignment :
       {PhaseAssignment::kPerPlayer, PhaseAssignment::kArmSets}) {
    for (const double multiplier : options.kerr_multipliers) {
      const JGateObjective objective(gamma, multiplier, assignment);
      Candidate c = coarse_scan(objective, options.grid_points);
      c = refine(objective, c, grid_step, options.min_step);

      JGatePhases candidate;
      candidate.gamma = gamma;
      candidate.theta1 = wrap_half_period(c.theta1);
      candidate.theta2 = wrap_half_period(c.theta2);
      candidate.assignment = assignment;
      candidate.kerr_multiplier = multiplier;
      const auto match = verify_jgate(candidate, tol);
      candidate.residual = match.residual;
      candidate.valid = match.equal;
      if (candidate.valid) return candidate;
      if (candidate.residual < best.residual) best = candidate;
    }
  }
  return best;
}

double CommutatorReport::worst() const {
  return std::max({dd, cd, dc, cc});
}

CommutatorReport verify_commutators(double gamma) {
  const Eigen::Matrix4cd j = fock::dual_rail_block(jgate_target(gamma));
  const Eigen::Matrix2cd c = strategy_matrix(kCooperate);
  const Eigen::Matrix2cd d = strategy_matrix(kDefect);
  const auto norm = [&](const Eigen::Matrix4cd& m) {
    return (j * m - m * j).cwiseAbs().maxCoeff();
  };
  CommutatorReport report;
  report.gamma = gamma;
  report.dd = norm(kron(d, d));
  report.cd = norm(kron(c, d));
  report.dc = norm(kron(d, c));
  report.cc = norm(kron(c, c));
  return report;
}

StrategyCheck verify_strategy(const StrategyParams& s, double tol) {
  const auto circuit = strategy_circuit(s, kAlicePair);
  const auto u = circuit_unitary(circuit, fock::kGameSector);
  const Eigen::Matrix4cd expected =
      kron(strategy_matrix(s), Eigen::Matrix2cd::Identity());
  StrategyCheck check;
  check.match = fock::equal_up_to_global_phase(
      Matrix(fock::dual_rail_block(u)), Matrix(expected), tol);
  check.leakage = fock::dual_rail_leakage(u);
  return check;
}

Eigen::Matrix2cd single_photon_matrix(const Circuit& circuit) {
  return circuit_unitary(circuit, Sector{2, 1}).entries();
}

}  // namespace qpd::optics
