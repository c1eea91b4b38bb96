// Copyright 2026 The qbc-sim Authors
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

#include "states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rng.hpp"

namespace qbc {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kClassicalCross = 1e-8;

bool is_probability_vector(const std::vector<double>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    sum += v;
  }
  return !p.empty() && std::abs(sum - 1.0) <= tol::hermitian;
}

// True when the sorted-descending prefix sums of `lambda` dominate those of
// `target` (both treated as probability vectors of equal length).
bool majorizes(std::vector<double> lambda, std::vector<double> target) {
  std::sort(lambda.begin(), lambda.end(), std::greater<double>());
  std::sort(target.begin(), target.end(), std::greater<double>());
  double sl = 0.0;
  double st = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    sl += lambda[i];
    st += target[i];
    if (sl < st - 1e-9) return false;
  }
  return true;
}

// Orthonormal basis {e_j} of the span of `frame` such that
// <e_j| H |e_j> = target_j, where H is diagonal in `frame` with entries
// `values`. Constructive Schur-Horn: for each target, rotate an adjacent
// pair (value_i >= t >= value_j) so one frame vector attains the target
// exactly; the partner keeps the remainder and the problem recurses.
Matrix schur_horn_basis(std::vector<double> values, Matrix frame,
                        const std::vector<double>& target) {
  const Eigen::Index n = frame.cols();
  std::vector<std::size_t> target_order(target.size());
  std::iota(target_order.begin(), target_order.end(), 0);
  std::sort(target_order.begin(), target_order.end(),
            [&](std::size_t a, std::size_t b) { return target[a] > target[b]; });

  Matrix out(frame.rows(), n);
  for (Eigen::Index step = 0; step < n; ++step) {
    // Keep the working values sorted descending, carrying frame columns.
    std::vector<Eigen::Index> ord(values.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(),
              [&](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });
    std::vector<double> sorted_values;
    Matrix sorted_frame(frame.rows(), frame.cols());
    for (Eigen::Index k = 0; k < frame.cols(); ++k) {
      sorted_values.push_back(values[static_cast<std::size_t>(ord[static_cast<std::size_t>(k)])]);
      sorted_frame.col(k) = frame.col(ord[static_cast<std::size_t>(k)]);
    }
    values = std::move(sorted_values);
    frame = std::move(sorted_frame);

    const double t = target[target_order[static_cast<std::size_t>(step)]];
    if (step == n - 1) {
      out.col(static_cast<Eigen::Index>(target_order[static_cast<std::size_t>(step)])) =
          frame.col(0);
      break;
    }
    // First index whose value drops to (or below) the target.
    Eigen::Index j = 0;
    while (j < frame.cols() && values[static_cast<std::size_t>(j)] > t + 1e-12) ++j;
    Eigen::Index i = j > 0 ? j - 1 : 0;
    if (j >= frame.cols()) j = frame.cols() - 1;

    Vector picked;
    Vector partner;
    double rest;
    if (i == j || values[static_cast<std::size_t>(i)] - values[static_cast<std::size_t>(j)] <=
                      1e-12) {
      picked = frame.col(i);
      partner = frame.col(j);
      rest = values[static_cast<std::size_t>(i)] + values[static_cast<std::size_t>(j)] - t;
      if (i == j) rest = values[static_cast<std::size_t>(i)];
    } else {
      const double vi = values[static_cast<std::size_t>(i)];
      const double vj = values[static_cast<std::size_t>(j)];
      const double c2 = std::clamp((t - vj) / (vi - vj), 0.0, 1.0);
      const double c = std::sqrt(c2);
      const double s = std::sqrt(1.0 - c2);
      picked = c * frame.col(i) + s * frame.col(j);
      partner = -s * frame.col(i) + c * frame.col(j);
      rest = vi + vj - t;
    }
    out.col(static_cast<Eigen::Index>(target_order[static_cast<std::size_t>(step)])) = picked;

    std::vector<double> next_values;
    Matrix next_frame(frame.rows(), frame.cols() - 1);
    Eigen::Index w = 0;
    for (Eigen::Index k = 0; k < frame.cols(); ++k) {
      if (k == i || k == j) continue;
      next_values.push_back(values[static_cast<std::size_t>(k)]);
      next_frame.col(w++) = frame.col(k);
    }
    if (i != j) {
      next_values.push_back(rest);
      next_frame.col(w++) = partner;
    }
    values = std::move(next_values);
    frame = std::move(next_frame);
  }
  return out;
}

// Dephase a pure joint state in the A basis given by the columns of `basis`.
Matrix dephase_in_a_basis(const BipartitePureState& psi, const Matrix& basis) {
  Matrix chi = Matrix::Zero(psi.amplitudes.size(), psi.amplitudes.size());
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Vector b_part = contract_a(psi.amplitudes, basis.col(j), psi.dim_a, psi.dim_b);
    Vector component = Vector::Zero(psi.amplitudes.size());
    for (Eigen::Index a = 0; a < psi.dim_a; ++a) {
      component.segment(a * psi.dim_b, psi.dim_b) += basis.col(j)(a) * b_part;
    }
    chi += component * component.adjoint();
  }
  return chi;
}

// Splits the columns of `block` (orthonormal, spanning a degenerate
// eigenspace) into vectors with pairwise A-orthogonal supports, assuming the
// subspace admits such a basis. A generic Hermitian probe on B is diagonal
// in that basis, so its eigenvectors recover it.
Matrix split_degenerate_block(const Matrix& block, Eigen::Index dim_a,
                              Eigen::Index dim_b) {
  const Eigen::Index m = block.cols();
  if (m <= 1) return block;
  for (int probe = 0; probe < 4; ++probe) {
    Matrix g = Matrix::Zero(dim_b, dim_b);
    if (probe == 0) {
      for (Eigen::Index k = 0; k < dim_b; ++k) g(k, k) = static_cast<double>(k + 1);
    } else {
      Rng rng(0x51ab5ULL + static_cast<std::uint64_t>(probe));
      for (Eigen::Index r = 0; r < dim_b; ++r) {
        g(r, r) = rng.next_gaussian();
        for (Eigen::Index c = r + 1; c < dim_b; ++c) {
          g(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
          g(c, r) = std::conj(g(r, c));
        }
      }
    }
    Matrix big = tensor_product(Matrix::Identity(dim_a, dim_a), g);
    Matrix s = block.adjoint() * big * block;
    Spectrum spec = hermitian_eig(Matrix(0.5 * (s + s.adjoint())));
    bool distinct = true;
    for (Eigen::Index k = 0; k + 1 < m; ++k) {
      if (spec.eigenvalues(k) - spec.eigenvalues(k + 1) <= 1e-9) distinct = false;
    }
    if (distinct || probe == 3) return block * spec.eigenvectors;
  }
  return block;
}

struct ClassicalEigensystem {
  std::vector<double> weights;
  Matrix vectors;  // columns
};

// Eigenvectors of chi above the support cutoff, with degenerate blocks
// rotated back to the A-classical product form and the structure verified.
ClassicalEigensystem classical_eigensystem(const DensityOperator& chi,
                                           const char* who) {
  const Eigen::Index da = chi.space.dim_a;
  const Eigen::Index db = chi.space.dim_b;
  Spectrum spec = hermitian_eig(chi.matrix);
  Eigen::Index rank = 0;
  while (rank < spec.eigenvalues.size() &&
         spec.eigenvalues(rank) > tol::support_cutoff) {
    ++rank;
  }

  ClassicalEigensystem out;
  out.vectors.resize(chi.dim(), rank);
  Eigen::Index start = 0;
  while (start < rank) {
    Eigen::Index end = start + 1;
    while (end < rank && spec.eigenvalues(start) - spec.eigenvalues(end) <=
                             tol::degeneracy_gap) {
      ++end;
    }
    Matrix block = spec.eigenvectors.block(0, start, chi.dim(), end - start);
    out.vectors.block(0, start, chi.dim(), end - start) =
        split_degenerate_block(block, da, db);
    for (Eigen::Index k = start; k < end; ++k) {
      out.weights.push_back(spec.eigenvalues(k));
    }
    start = end;
  }

  for (Eigen::Index k = 0; k < rank; ++k) {
    for (Eigen::Index l = 0; l < rank; ++l) {
      if (k == l) continue;
      Matrix cross = partial_trace(
          Matrix(out.vectors.col(k) * out.vectors.col(l).adjoint()), da, db,
          Subsystem::A);
      if (max_abs(cross) > kClassicalCross) {
        throw std::invalid_argument(
            std::string(who) +
            ": eigenvectors are not orthogonal on subsystem A (cross term " +
            std::to_string(max_abs(cross)) +
            "); the state does not carry a classical record on A");
      }
    }
  }
  return out;
}

}  // namespace

Eigen::Index Space::total() const {
  switch (label) {
    case SpaceLabel::A:
      return dim_a;
    case SpaceLabel::B:
      return dim_b;
    case SpaceLabel::AB:
      return dim_a * dim_b;
  }
  return 0;
}

DensityOperator DensityOperator::create(Space space, Matrix matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != space.total()) {
    throw std::invalid_argument(
        "DensityOperator: matrix does not match the labeled space");
  }
  if (!all_finite(matrix)) {
    throw std::invalid_argument("DensityOperator: non-finite entries");
  }
  if (!is_hermitian(matrix)) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  if (std::abs(matrix.trace().real() - 1.0) > tol::hermitian ||
      std::abs(matrix.trace().imag()) > tol::hermitian) {
    throw std::invalid_argument("DensityOperator: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < tol::psd_floor) {
    throw std::invalid_argument(
        "DensityOperator: matrix is not positive semidefinite");
  }
  return {space, std::move(matrix)};
}

BipartitePureState BipartitePureState::create(Eigen::Index dim_a,
                                              Eigen::Index dim_b,
                                              Vector amplitudes) {
  if (dim_a <= 0 || dim_b <= 0 || amplitudes.size() != dim_a * dim_b) {
    throw std::invalid_argument(
        "BipartitePureState: amplitude count must be dim_a * dim_b");
  }
  if (!all_finite(amplitudes)) {
    throw std::invalid_argument("BipartitePureState: non-finite amplitudes");
  }
  if (std::abs(amplitudes.norm() - 1.0) > tol::orthonormal) {
    throw std::invalid_argument("BipartitePureState: state is not unit norm");
  }
  return {dim_a, dim_b, std::move(amplitudes)};
}

Matrix BipartitePureState::coefficient_matrix() const {
  Matrix m(dim_a, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    m.row(a) = amplitudes.segment(a * dim_b, dim_b).transpose();
  }
  return m;
}

DensityOperator BipartitePureState::marginal(Subsystem keep) const {
  Matrix rho = partial_trace(density(), dim_a, dim_b,
                             keep == Subsystem::B ? Subsystem::A : Subsystem::B);
  return DensityOperator::create(
      keep == Subsystem::B ? Space::b(dim_b) : Space::a(dim_a), std::move(rho));
}

ProtocolFamily ProtocolFamily::create(double theta,
                                      std::vector<double> spectrum0,
                                      std::vector<double> spectrum1,
                                      Eigen::Index dim_a, Eigen::Index dim_b) {
  if (!(theta >= 0.0 && theta <= kPi / 4 + 1e-12)) {
    throw std::invalid_argument(
        "ProtocolFamily: theta must lie in [0, pi/4]");
  }
  if (!is_probability_vector(spectrum0) || !is_probability_vector(spectrum1)) {
    throw std::invalid_argument(
        "ProtocolFamily: spectra must be probability vectors");
  }
  const auto r0 = static_cast<Eigen::Index>(spectrum0.size());
  const auto r1 = static_cast<Eigen::Index>(spectrum1.size());
  if (dim_b < r0 + r1) {
    throw std::invalid_argument(
        "ProtocolFamily: dim_b must be at least " + std::to_string(r0 + r1) +
        " to host both spectral blocks");
  }
  if (dim_a < 2) {
    throw std::invalid_argument("ProtocolFamily: dim_a must be at least 2");
  }
  return {theta, std::move(spectrum0), std::move(spectrum1), dim_a, dim_b};
}

ProtocolFamily ProtocolFamily::minimal(double theta) {
  return create(theta, {1.0}, {1.0}, 2, 2);
}

bool ProtocolFamily::is_minimal() const {
  return dim_a == 2 && dim_b == 2 && spectrum0.size() == 1 &&
         spectrum1.size() == 1;
}

CanonicalStates build_canonical(const ProtocolFamily& family) {
  const Eigen::Index r0 = family.rank0();
  const Eigen::Index r1 = family.rank1();
  const Eigen::Index da = family.dim_a;
  const Eigen::Index db = family.dim_b;
  if (da < r0 + r1) {
    throw std::invalid_argument(
        "build_canonical: dim_a = " + std::to_string(da) +
        " cannot carry the Schmidt rank; need dim_a >= " +
        std::to_string(r0 + r1));
  }

  // |0^AB> = sum_i alpha_i |i>_A |i>_B, |1^AB> = sum_j beta_j |r0+j>_A |r0+j>_B.
  Vector zero_ab = Vector::Zero(da * db);
  Vector one_ab = Vector::Zero(da * db);
  for (Eigen::Index i = 0; i < r0; ++i) {
    zero_ab(i * db + i) = std::sqrt(family.spectrum0[static_cast<std::size_t>(i)]);
  }
  for (Eigen::Index j = 0; j < r1; ++j) {
    one_ab((r0 + j) * db + (r0 + j)) =
        std::sqrt(family.spectrum1[static_cast<std::size_t>(j)]);
  }
  zero_ab.normalize();
  one_ab.normalize();

  const double c = std::cos(family.theta);
  const double s = std::sin(family.theta);
  Vector psi0 = c * zero_ab + s * one_ab;
  Vector psi1 = -s * zero_ab + c * one_ab;
  psi0.normalize();
  psi1.normalize();

  Matrix rho_hat0 = Matrix::Zero(db, db);
  Matrix rho_hat1 = Matrix::Zero(db, db);
  for (Eigen::Index i = 0; i < r0; ++i) {
    rho_hat0(i, i) = family.spectrum0[static_cast<std::size_t>(i)];
  }
  for (Eigen::Index j = 0; j < r1; ++j) {
    rho_hat1(r0 + j, r0 + j) = family.spectrum1[static_cast<std::size_t>(j)];
  }

  CanonicalStates out{
      BipartitePureState::create(da, db, std::move(psi0)),
      BipartitePureState::create(da, db, std::move(psi1)),
      DensityOperator::create(Space::b(db), c * c * rho_hat0 + s * s * rho_hat1),
      DensityOperator::create(Space::b(db), s * s * rho_hat0 + c * c * rho_hat1),
      DensityOperator::create(Space::b(db), rho_hat0),
      DensityOperator::create(Space::b(db), rho_hat1),
      BipartitePureState::create(da, db, std::move(zero_ab)),
      BipartitePureState::create(da, db, std::move(one_ab)),
  };
  return out;
}

SchmidtForm schmidt_decompose(const BipartitePureState& state) {
  Eigen::JacobiSVD<Matrix> svd(state.coefficient_matrix(),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) >= tol::support_cutoff) {
    ++rank;
  }
  SchmidtForm out;
  out.basis_a.resize(state.dim_a, rank);
  out.basis_b.resize(state.dim_b, rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    out.coefficients.push_back(svd.singularValues()(k));
    Vector a = svd.matrixU().col(k);
    // conj(V) so that sum_k c_k a_k (x) b_k reproduces the amplitudes; any
    // phase is pushed into the B vector, keeping coefficients real positive.
    Vector b = svd.matrixV().col(k).conjugate();
    for (Eigen::Index r = 0; r < a.size(); ++r) {
      if (std::abs(a(r)) > tol::support_cutoff) {
        const Complex phase = std::conj(a(r)) / std::abs(a(r));
        a *= phase;
        b *= std::conj(phase);
        break;
      }
    }
    out.basis_a.col(k) = a;
    out.basis_b.col(k) = b;
  }
  return out;
}

BipartitePureState purify(const DensityOperator& rho, Eigen::Index dim_a) {
  Spectrum spec = hermitian_eig(rho.matrix);
  Eigen::Index rank = 0;
  while (rank < spec.eigenvalues.size() &&
         spec.eigenvalues(rank) > tol::support_cutoff) {
    ++rank;
  }
  if (dim_a < rank) {
    throw std::invalid_argument("purify: dim_a = " + std::to_string(dim_a) +
                                " is below rank " + std::to_string(rank));
  }
  const Eigen::Index db = rho.dim();
  Vector amp = Vector::Zero(dim_a * db);
  for (Eigen::Index k = 0; k < rank; ++k) {
    amp.segment(k * db, db) =
        std::sqrt(spec.eigenvalues(k)) * spec.eigenvectors.col(k);
  }
  amp.normalize();
  return BipartitePureState::create(dim_a, db, std::move(amp));
}

std::pair<DensityOperator, DensityOperator> build_evidence_states(
    const ProtocolFamily& family, const std::vector<double>& mixing0,
    const std::vector<double>& mixing1) {
  if (!is_probability_vector(mixing0) || !is_probability_vector(mixing1)) {
    throw std::invalid_argument(
        "build_evidence_states: mixing lists must be probability vectors");
  }
  CanonicalStates canon = build_canonical(family);
  const Space joint = Space::ab(family.dim_a, family.dim_b);

  auto build_one = [&](const BipartitePureState& psi,
                       const std::vector<double>& mixing) -> Matrix {
    if (mixing.size() == 1) return psi.density();
    const auto n = static_cast<Eigen::Index>(mixing.size());
    if (n > family.dim_a) {
      throw std::invalid_argument(
          "build_evidence_states: dim_a = " + std::to_string(family.dim_a) +
          " cannot host " + std::to_string(n) + " orthogonal classical labels");
    }
    // Minimal model with uniform mixing: dephase in the Hadamard-type basis.
    // That basis realizes the weights for every theta and is the one the
    // consistency test measures, so conditional states stay pure.
    if (family.is_minimal() && n == 2 &&
        std::abs(mixing[0] - 0.5) <= 1e-12 && std::abs(mixing[1] - 0.5) <= 1e-12) {
      Matrix basis(2, 2);
      const double r = 1.0 / std::sqrt(2.0);
      basis << r, r, r, -r;
      return dephase_in_a_basis(psi, basis);
    }
    Matrix rho_a = psi.marginal(Subsystem::A).matrix;
    Spectrum spec = hermitian_eig(rho_a);
    std::vector<double> lambda;
    for (Eigen::Index k = 0; k < n; ++k) {
      lambda.push_back(k < spec.eigenvalues.size()
                           ? std::max(spec.eigenvalues(k), 0.0)
                           : 0.0);
    }
    if (!majorizes(lambda, mixing)) {
      throw std::invalid_argument(
          "build_evidence_states: mixing weights are not majorized by the "
          "marginal spectrum; no such evidence ensemble exists");
    }
    Matrix frame = spec.eigenvectors.leftCols(n);
    Matrix basis = schur_horn_basis(lambda, frame, mixing);
    return dephase_in_a_basis(psi, basis);
  };

  Matrix chi0 = build_one(canon.psi0, mixing0);
  Matrix chi1 = build_one(canon.psi1, mixing1);
  if (max_abs(chi0 * chi1) > tol::hermitian) {
    throw std::invalid_argument(
        "build_evidence_states: this family/mixing combination does not admit "
        "orthogonal evidence states under the classical-label construction");
  }
  return {DensityOperator::create(joint, std::move(chi0)),
          DensityOperator::create(joint, std::move(chi1))};
}

std::pair<BipartitePureState, BipartitePureState> orthogonal_purifications(
    const DensityOperator& chi0, const DensityOperator& chi1) {
  if (chi0.space.label != SpaceLabel::AB || !(chi0.space == chi1.space)) {
    throw std::invalid_argument(
        "orthogonal_purifications: inputs must live on the same joint space");
  }
  if (max_abs(chi0.matrix * chi1.matrix) > 1e-8) {
    throw std::invalid_argument(
        "orthogonal_purifications: evidence states are not orthogonal");
  }
  const Eigen::Index da = chi0.space.dim_a;
  const Eigen::Index db = chi0.space.dim_b;

  auto purify_one = [&](const DensityOperator& chi) -> BipartitePureState {
    ClassicalEigensystem sys =
        classical_eigensystem(chi, "orthogonal_purifications");
    Vector amp = Vector::Zero(chi.dim());
    for (std::size_t k = 0; k < sys.weights.size(); ++k) {
      amp += std::sqrt(sys.weights[k]) *
             sys.vectors.col(static_cast<Eigen::Index>(k));
    }
    amp.normalize();
    return BipartitePureState::create(da, db, std::move(amp));
  };

  return {purify_one(chi0), purify_one(chi1)};
}

BipartitePureState apply_unitary_a(const BipartitePureState& state,
                                   const Matrix& u) {
  if (u.rows() != state.dim_a || u.cols() != state.dim_a) {
    throw std::invalid_argument("apply_unitary_a: operator must act on H_A");
  }
  Vector out = Vector::Zero(state.amplitudes.size());
  for (Eigen::Index a = 0; a < state.dim_a; ++a) {
    for (Eigen::Index ap = 0; ap < state.dim_a; ++ap) {
      out.segment(a * state.dim_b, state.dim_b) +=
          u(a, ap) * state.amplitudes.segment(ap * state.dim_b, state.dim_b);
    }
  }
  out.normalize();
  return BipartitePureState::create(state.dim_a, state.dim_b, std::move(out));
}

}  // namespace qbc
