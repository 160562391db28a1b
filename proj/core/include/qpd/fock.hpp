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

// Exact linear algebra on a fixed photon-number sector of a few bosonic
// modes. Every optical element used in this project conserves total photon
// number, so restricting to one sector is exact rather than a truncation.
//
// Basis order is lexicographic descending on the occupation list, e.g. for
// two modes and one photon: |1,0>, |0,1>.

#ifndef QPD_FOCK_HPP_
#define QPD_FOCK_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qpd::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;

// Mode labels of the two-player game space: Alice owns (a, b), Bob (c, d).
enum Mode : int { kModeA = 0, kModeB = 1, kModeC = 2, kModeD = 3 };

struct Sector {
  int modes = 0;
  int photons = 0;

  std::size_t dimension() const;
  friend bool operator==(const Sector&, const Sector&) = default;
};

// Four modes carrying two photons: the dual-rail two-qubit game space.
inline constexpr Sector kGameSector{4, 2};

struct FockBasisState {
  std::vector<int> occupations;

  int total() const;
  friend bool operator==(const FockBasisState&,
                         const FockBasisState&) = default;
};

std::vector<FockBasisState> enumerate_basis(int modes, int photons);

// Enumerated basis plus reverse lookup.
class Basis {
 public:
  explicit Basis(Sector sector);

  const Sector& sector() const { return sector_; }
  std::size_t size() const { return states_.size(); }
  const FockBasisState& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<FockBasisState>& states() const { return states_; }
  std::optional<std::size_t> index_of(std::span<const int> occupations) const;

 private:
  Sector sector_;
  std::vector<FockBasisState> states_;
  std::map<std::vector<int>, std::size_t> index_;
};

class StateVector {
 public:
  StateVector(Sector sector, Vector amplitudes);

  static StateVector basis_state(Sector sector,
                                 std::span<const int> occupations);
  static StateVector basis_state(Sector sector,
                                 std::initializer_list<int> occupations);

  const Sector& sector() const { return sector_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::span<const int> occupations) const;
  Complex amplitude(std::initializer_list<int> occupations) const;
  double norm_squared() const { return amplitudes_.squaredNorm(); }
  bool is_normalized(double tol = kNormTolerance) const;

 private:
  Sector sector_;
  Vector amplitudes_;
};

class OperatorMatrix {
 public:
  // When `unitary` is asserted the matrix is checked and the constructor
  // throws std::invalid_argument if U^dagger U deviates from identity by
  // more than kUnitarityTolerance (max-norm).
  OperatorMatrix(Sector sector, Matrix entries, bool unitary);

  static OperatorMatrix identity(Sector sector);

  const Sector& sector() const { return sector_; }
  const Matrix& entries() const { return entries_; }
  bool unitary() const { return unitary_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(entries_.rows());
  }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row),
                    static_cast<Eigen::Index>(col));
  }

  OperatorMatrix adjoint() const;
  double unitarity_defect() const;

 private:
  Sector sector_;
  Matrix entries_;
  bool unitary_;
};

enum class GeneratorKind { kHermitian, kAntiHermitian };

class GeneratorMatrix {
 public:
  // Throws std::invalid_argument carrying the measured defect when the
  // entries do not have the declared symmetry within kHermiticityTolerance.
  GeneratorMatrix(Sector sector, Matrix entries, GeneratorKind kind);

  // Classifies the matrix; throws if it is neither hermitian nor
  // anti-hermitian.
  static GeneratorMatrix classify(Sector sector, Matrix entries);

  const Sector& sector() const { return sector_; }
  const Matrix& entries() const { return entries_; }
  GeneratorKind kind() const { return kind_; }

 private:
  Sector sector_;
  Matrix entries_;
  GeneratorKind kind_;
};

// max |G - G^dagger| and max |G + G^dagger|.
double hermiticity_defect(const Matrix& m);
double antihermiticity_defect(const Matrix& m);

enum class HoppingSymmetry { kSymmetric, kAntisymmetric };

// a_i^dagger a_j + a_j^dagger a_i (hermitian) or a_i^dagger a_j - a_j^dagger
// a_i (anti-hermitian), with the usual sqrt(n) ladder factors.
GeneratorMatrix hopping_generator(Sector sector, int mode_i, int mode_j,
                                  HoppingSymmetry symmetry);

// n_i (diagonal).
GeneratorMatrix number_generator(Sector sector, int mode);

// n_i n_j (diagonal).
GeneratorMatrix cross_number_generator(Sector sector, int mode_i, int mode_j);

// Matrix product of two generators on the same sector; the result must be
// hermitian or anti-hermitian (true e.g. for commuting factors).
GeneratorMatrix generator_product(const GeneratorMatrix& lhs,
                                  const GeneratorMatrix& rhs);

// Sign of the imaginary unit in exp(+-i * scale * G).
enum class PhaseSign { kPositive, kNegative };

// exp(scale * G) for an anti-hermitian generator.
OperatorMatrix exponentiate(const GeneratorMatrix& generator, double scale);

// exp(+-i * scale * G) for a hermitian generator.
OperatorMatrix exponentiate(const GeneratorMatrix& generator, double scale,
                            PhaseSign sign);

StateVector apply(const OperatorMatrix& op, const StateVector& state);

// Operator product in written order: compose({U1, U2, U3}) = U1 U2 U3, so
// the rightmost factor acts first.
OperatorMatrix compose(std::span<const OperatorMatrix> ops);
OperatorMatrix compose(std::initializer_list<OperatorMatrix> ops);

struct PhaseMatch {
  bool equal = false;
  Complex phase{1.0, 0.0};
  double residual = 0.0;
};

// Finds a unit phase lambda with U ~ lambda V. lambda comes from the entry
// maximising |U_k| |V_k| (symmetric in U, V); residual is max |U - lambda V|.
PhaseMatch equal_up_to_global_phase(const Matrix& u, const Matrix& v,
                                    double tol);
PhaseMatch equal_up_to_global_phase(const OperatorMatrix& u,
                                    const OperatorMatrix& v, double tol);

// Dual-rail computational states |CC>, |CD>, |DC>, |DD> as occupations of
// (a, b, c, d), with |C> = |1,0> and |D> = |0,1> on each player's pair.
inline constexpr std::array<std::array<int, 4>, 4> kDualRailOccupations{{
    {1, 0, 1, 0},
    {1, 0, 0, 1},
    {0, 1, 1, 0},
    {0, 1, 0, 1},
}};

// Basis indices of the four dual-rail states in the game sector.
std::array<std::size_t, 4> dual_rail_indices();

struct DualRailProjection {
  std::array<Complex, 4> amplitudes{};
  double leakage = 0.0;
};

DualRailProjection project_dual_rail(const StateVector& state);

// 4x4 dual-rail block of an operator on the game sector (rows and columns
// ordered CC, CD, DC, DD).
Eigen::Matrix4cd dual_rail_block(const OperatorMatrix& op);

// Largest squared norm that any dual-rail input loses to states outside the
// dual-rail subspace.
double dual_rail_leakage(const OperatorMatrix& op);

// max-norm of a - b.
double max_norm_distance(const Matrix& a, const Matrix& b);

}  // namespace qpd::fock

#endif  // QPD_FOCK_HPP_
