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

#include "qpd/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qpd::fock {

namespace {

void check_sector(Sector sector) {
  if (sector.modes < 1 || sector.photons < 0) {
    std::ostringstream msg;
    msg << "invalid sector (modes=" << sector.modes
        << ", photons=" << sector.photons << ")";
    throw std::invalid_argument(msg.str());
  }
}

void check_mode(Sector sector, int mode) {
  if (mode < 0 || mode >= sector.modes) {
    std::ostringstream msg;
    msg << "mode " << mode << " out of range for " << sector.modes
        << "-mode sector";
    throw std::invalid_argument(msg.str());
  }
}

void check_same_sector(Sector lhs, Sector rhs, const char* what) {
  if (!(lhs == rhs)) {
    std::ostringstream msg;
    msg << what << ": sector mismatch (" << lhs.modes << "," << lhs.photons
        << ") vs (" << rhs.modes << "," << rhs.photons << ")";
    throw std::invalid_argument(msg.str());
  }
}

void enumerate_into(int mode, int remaining, std::vector<int>& current,
                    std::vector<FockBasisState>& out) {
  const int modes = static_cast<int>(current.size());
  if (mode == modes - 1) {
    current[static_cast<std::size_t>(mode)] = remaining;
    out.push_back(FockBasisState{current});
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    current[static_cast<std::size_t>(mode)] = n;
    enumerate_into(mode + 1, remaining - n, current, out);
  }
}

// <out| a_i^dagger a_j |in> for basis states; accumulates into `m`.
void add_hop(const Basis& basis, int mode_i, int mode_j, double sign,
             Matrix& m) {
  for (std::size_t col = 0; col < basis.size(); ++col) {
    std::vector<int> occ = basis[col].occupations;
    const int nj = occ[static_cast<std::size_t>(mode_j)];
    if (nj == 0) continue;
    const int ni = occ[static_cast<std::size_t>(mode_i)];
    const double factor = std::sqrt(static_cast<double>(nj)) *
                          std::sqrt(static_cast<double>(ni + 1));
    occ[static_cast<std::size_t>(mode_j)] -= 1;
    occ[static_cast<std::size_t>(mode_i)] += 1;
    const auto row = basis.index_of(occ);
    m(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) +=
        sign * factor;
  }
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != c && m(r, c) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

// exp(i * t * H) for hermitian H.
Matrix hermitian_exponential(const Matrix& h, double t) {
  const Eigen::Index n = h.rows();
  if (is_diagonal(h)) {
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      out(k, k) = std::exp(Complex(0.0, t * h(k, k).real()));
    }
    return out;
  }
  // Symmetrize so the solver sees an exactly hermitian input.
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k) = std::exp(Complex(0.0, t * lambda(k)));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

}  // namespace

std::size_t Sector::dimension() const {
  // C(N + M - 1, M - 1), computed incrementally to stay exact.
  std::size_t result = 1;
  for (int k = 1; k < modes; ++k) {
    result = result * static_cast<std::size_t>(photons + k) /
             static_cast<std::size_t>(k);
  }
  return result;
}

int FockBasisState::total() const {
  return std::accumulate(occupations.begin(), occupations.end(), 0);
}

std::vector<FockBasisState> enumerate_basis(int modes, int photons) {
  check_sector(Sector{modes, photons});
  std::vector<FockBasisState> out;
  std::vector<int> current(static_cast<std::size_t>(modes), 0);
  enumerate_into(0, photons, current, out);
  return out;
}

Basis::Basis(Sector sector)
    : sector_(sector), states_(enumerate_basis(sector.modes, sector.photons)) {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_.emplace(states_[i].occupations, i);
  }
}

std::optional<std::size_t> Basis::index_of(
    std::span<const int> occupations) const {
  const auto it =
      index_.find(std::vector<int>(occupations.begin(), occupations.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateVector::StateVector(Sector sector, Vector amplitudes)
    : sector_(sector), amplitudes_(std::move(amplitudes)) {
  check_sector(sector_);
  if (static_cast<std::size_t>(amplitudes_.size()) != sector_.dimension()) {
    throw std::invalid_argument("state vector length does not match sector");
  }
}

StateVector StateVector::basis_state(Sector sector,
                                     std::span<const int> occupations) {
  const Basis basis(sector);
  const auto idx = basis.index_of(occupations);
  if (!idx) {
    throw std::invalid_argument("occupations are not a state of this sector");
  }
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
  amps(static_cast<Eigen::Index>(*idx)) = 1.0;
  return StateVector(sector, std::move(amps));
}

StateVector StateVector::basis_state(Sector sector,
                                     std::initializer_list<int> occupations) {
  return basis_state(sector,
                     std::span<const int>(occupations.begin(),
                                          occupations.size()));
}

Complex StateVector::amplitude(std::span<const int> occupations) const {
  const Basis basis(sector_);
  const auto idx = basis.index_of(occupations);
  if (!idx) return Complex(0.0, 0.0);
  return amplitudes_(static_cast<Eigen::Index>(*idx));
}

Complex StateVector::amplitude(std::initializer_list<int> occupations) const {
  return amplitude(
      std::span<const int>(occupations.begin(), occupations.size()));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

OperatorMatrix::OperatorMatrix(Sector sector, Matrix entries, bool unitary)
    : sector_(sector), entries_(std::move(entries)), unitary_(unitary) {
  check_sector(sector_);
  const auto dim = static_cast<Eigen::Index>(sector_.dimension());
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw std::invalid_argument("operator shape does not match sector");
  }
  if (unitary_) {
    const double defect = unitarity_defect();
    if (defect > kUnitarityTolerance) {
      std::ostringstream msg;
      msg << "operator asserted unitary but |U^dagger U - I|_max = " << defect;
      throw std::invalid_argument(msg.str());
    }
  }
}

OperatorMatrix OperatorMatrix::identity(Sector sector) {
  const auto dim = static_cast<Eigen::Index>(sector.dimension());
  return OperatorMatrix(sector, Matrix::Identity(dim, dim), true);
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(sector_, entries_.adjoint(), unitary_);
}

double OperatorMatrix::unitarity_defect() const {
  const Matrix gram = entries_.adjoint() * entries_;
  return max_norm_distance(gram, Matrix::Identity(gram.rows(), gram.cols()));
}

double hermiticity_defect(const Matrix& m) {
  return m.rows() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double antihermiticity_defect(const Matrix& m) {
  return m.rows() == 0 ? 0.0 : (m + m.adjoint()).cwiseAbs().maxCoeff();
}

GeneratorMatrix::GeneratorMatrix(Sector sector, Matrix entries,
                                 GeneratorKind kind)
    : sector_(sector), entries_(std::move(entries)), kind_(kind) {
  check_sector(sector_);
  const auto dim = static_cast<Eigen::Index>(sector_.dimension());
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw std::invalid_argument("generator shape does not match sector");
  }
  const double defect = kind_ == GeneratorKind::kHermitian
                            ? hermiticity_defect(entries_)
                            : antihermiticity_defect(entries_);
  if (defect > kHermiticityTolerance) {
    std::ostringstream msg;
    msg << "generator is not "
        << (kind_ == GeneratorKind::kHermitian ? "hermitian" : "anti-hermitian")
        << ": defect " << defect;
    throw std::invalid_argument(msg.str());
  }
}

GeneratorMatrix GeneratorMatrix::classify(Sector sector, Matrix entries) {
  const double herm = hermiticity_defect(entries);
  const double anti = antihermiticity_defect(entries);
  if (herm <= kHermiticityTolerance) {
    return GeneratorMatrix(sector, std::move(entries),
                           GeneratorKind::kHermitian);
  }
  if (anti <= kHermiticityTolerance) {
    return GeneratorMatrix(sector, std::move(entries),
                           GeneratorKind::kAntiHermitian);
  }
  std::ostringstream msg;
  msg << "matrix is neither hermitian (defect " << herm
      << ") nor anti-hermitian (defect " << anti << ")";
  throw std::invalid_argument(msg.str());
}

GeneratorMatrix hopping_generator(Sector sector, int mode_i, int mode_j,
                                  HoppingSymmetry symmetry) {
  check_sector(sector);
  check_mode(sector, mode_i);
  check_mode(sector, mode_j);
  if (mode_i == mode_j) {
    throw std::invalid_argument("hopping generator needs two distinct modes");
  }
  const Basis basis(sector);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  const bool symmetric = symmetry == HoppingSymmetry::kSymmetric;
  add_hop(basis, mode_i, mode_j, 1.0, m);
  add_hop(basis, mode_j, mode_i, symmetric ? 1.0 : -1.0, m);
  return GeneratorMatrix(sector, std::move(m),
                         symmetric ? GeneratorKind::kHermitian
                                   : GeneratorKind::kAntiHermitian);
}

GeneratorMatrix number_generator(Sector sector, int mode) {
  check_sector(sector);
  check_mode(sector, mode);
  const Basis basis(sector);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    m(k, k) = basis[static_cast<std::size_t>(k)]
                  .occupations[static_cast<std::size_t>(mode)];
  }
  return GeneratorMatrix(sector, std::move(m), GeneratorKind::kHermitian);
}

GeneratorMatrix cross_number_generator(Sector sector, int mode_i, int mode_j) {
  check_sector(sector);
  check_mode(sector, mode_i);
  check_mode(sector, mode_j);
  const Basis basis(sector);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto& occ = basis[static_cast<std::size_t>(k)].occupations;
    m(k, k) = occ[static_cast<std::size_t>(mode_i)] *
              occ[static_cast<std::size_t>(mode_j)];
  }
  return GeneratorMatrix(sector, std::move(m), GeneratorKind::kHermitian);
}

GeneratorMatrix generator_product(const GeneratorMatrix& lhs,
                                  const GeneratorMatrix& rhs) {
  check_same_sector(lhs.sector(), rhs.sector(), "generator_product");
  return GeneratorMatrix::classify(lhs.sector(),
                                   lhs.entries() * rhs.entries());
}

OperatorMatrix exponentiate(const GeneratorMatrix& generator, double scale) {
  if (generator.kind() != GeneratorKind::kAntiHermitian) {
    throw std::invalid_argument(
        "exponentiate(G, scale) needs an anti-hermitian generator; pass a "
        "PhaseSign for hermitian generators");
  }
  // A = -iH with H = iA hermitian, so exp(s A) = exp(-i s H).
  const Matrix h = Complex(0.0, 1.0) * generator.entries();
  return OperatorMatrix(generator.sector(), hermitian_exponential(h, -scale),
                        true);
}

OperatorMatrix exponentiate(const GeneratorMatrix& generator, double scale,
                            PhaseSign sign) {
  if (generator.kind() != GeneratorKind::kHermitian) {
    throw std::invalid_argument(
        "exponentiate(G, scale, sign) needs a hermitian generator");
  }
  const double t = sign == PhaseSign::kPositive ? scale : -scale;
  return OperatorMatrix(generator.sector(),
                        hermitian_exponential(generator.entries(), t), true);
}

StateVector apply(const OperatorMatrix& op, const StateVector& state) {
  check_same_sector(op.sector(), state.sector(), "apply");
  return StateVector(state.sector(), op.entries() * state.amplitudes());
}

OperatorMatrix compose(std::span<const OperatorMatrix> ops) {
  if (ops.empty()) {
    throw std::invalid_argument("compose needs at least one operator");
  }
  Matrix product = ops.front().entries();
  bool unitary = ops.front().unitary();
  for (std::size_t k = 1; k < ops.size(); ++k) {
    check_same_sector(ops.front().sector(), ops[k].sector(), "compose");
    product = product * ops[k].entries();
    unitary = unitary && ops[k].unitary();
  }
  return OperatorMatrix(ops.front().sector(), std::move(product), unitary);
}

OperatorMatrix compose(std::initializer_list<OperatorMatrix> ops) {
  return compose(std::span<const OperatorMatrix>(ops.begin(), ops.size()));
}

double max_norm_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_norm_distance: shape mismatch");
  }
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

PhaseMatch equal_up_to_global_phase(const Matrix& u, const Matrix& v,
                                    double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("equal_up_to_global_phase: shape mismatch");
  }
  PhaseMatch match;
  Eigen::Index best = -1;
  double best_weight = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const double weight = std::abs(u(k)) * std::abs(v(k));
    if (weight > best_weight) {
      best_weight = weight;
      best = k;
    }
  }
  if (best >= 0) {
    const Complex ratio = u(best) / v(best);
    match.phase = ratio / std::abs(ratio);
  }
  match.residual = max_norm_distance(u, match.phase * v);
  match.equal = match.residual <= tol;
  return match;
}

PhaseMatch equal_up_to_global_phase(const OperatorMatrix& u,
                                    const OperatorMatrix& v, double tol) {
  check_same_sector(u.sector(), v.sector(), "equal_up_to_global_phase");
  return equal_up_to_global_phase(u.entries(), v.entries(), tol);
}

std::array<std::size_t, 4> dual_rail_indices() {
  static const std::array<std::size_t, 4> indices = [] {
    const Basis basis(kGameSector);
    std::array<std::size_t, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) {
      out[k] = *basis.index_of(kDualRailOccupations[k]);
    }
    return out;
  }();
  return indices;
}

DualRailProjection project_dual_rail(const StateVector& state) {
  check_same_sector(state.sector(), kGameSector, "project_dual_rail");
  const auto idx = dual_rail_indices();
  DualRailProjection out;
  double inside = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    out.amplitudes[k] = state.amplitudes()(static_cast<Eigen::Index>(idx[k]));
    inside += std::norm(out.amplitudes[k]);
  }
  out.leakage = std::max(0.0, state.norm_squared() - inside);
  return out;
}

Eigen::Matrix4cd dual_rail_block(const OperatorMatrix& op) {
  check_same_sector(op.sector(), kGameSector, "dual_rail_block");
  const auto idx = dual_rail_indices();
  Eigen::Matrix4cd block;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          op(idx[r], idx[c]);
    }
  }
  return block;
}

double dual_rail_leakage(const OperatorMatrix& op) {
  check_same_sector(op.sector(), kGameSector, "dual_rail_leakage");
  const auto idx = dual_rail_indices();
  double worst = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const auto col = static_cast<Eigen::Index>(idx[c]);
    double inside = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
      inside += std::norm(op.entries()(static_cast<Eigen::Index>(idx[r]), col));
    }
    const double total = op.entries().col(col).squaredNorm();
    worst = std::max(worst, total - inside);
  }
  return std::max(0.0, worst);
}

}  // namespace qpd::fock
