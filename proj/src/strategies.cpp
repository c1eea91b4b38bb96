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

#include "strategies.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qbc {

namespace {

constexpr double kMarginalMatch = 1e-8;

Vector combine(const BipartitePureState& zero_ab,
               const BipartitePureState& one_ab, double c0, double c1) {
  Vector v = c0 * zero_ab.amplitudes + c1 * one_ab.amplitudes;
  v.normalize();
  return v;
}

// Deterministic completion of orthonormal columns to a full basis, scanning
// canonical basis vectors in index order.
Matrix complete_frame(const Matrix& columns, Eigen::Index dim) {
  Matrix full(dim, dim);
  Eigen::Index have = columns.cols();
  full.leftCols(have) = columns;
  for (Eigen::Index cand = 0; cand < dim && have < dim; ++cand) {
    Vector v = Vector::Zero(dim);
    v(cand) = 1.0;
    for (Eigen::Index k = 0; k < have; ++k) {
      v -= full.col(k).dot(v) * full.col(k);
    }
    const double n = v.norm();
    if (n > 1e-8) {
      full.col(have++) = v / n;
    }
  }
  if (have < dim) {
    throw std::runtime_error("switching_unitary: frame completion failed");
  }
  return full;
}

}  // namespace

CheatPlan CheatPlan::create(Strategy strategy, BipartitePureState initial,
                            std::array<BipartitePureState, 2> fakes) {
  const Matrix reference = initial.marginal(Subsystem::B).matrix;
  for (const auto& fake : fakes) {
    if (fake.dim_a != initial.dim_a || fake.dim_b != initial.dim_b) {
      throw std::invalid_argument("CheatPlan: fake state dimension mismatch");
    }
    if (max_abs(fake.marginal(Subsystem::B).matrix - reference) > 1e-9) {
      throw std::invalid_argument(
          "CheatPlan: fake state changes the transmitted marginal");
    }
  }
  return {strategy, std::move(initial), {std::move(fakes[0]), std::move(fakes[1])}};
}

CheatPlan mayers_plan(const ProtocolFamily& family, int evidence_bit) {
  if (evidence_bit != 0 && evidence_bit != 1) {
    throw std::invalid_argument("mayers_plan: evidence bit must be 0 or 1");
  }
  CanonicalStates canon = build_canonical(family);
  const double c = std::cos(family.theta);
  const double s = std::sin(family.theta);

  const BipartitePureState& honest_initial =
      evidence_bit == 0 ? canon.psi0 : canon.psi1;
  // Fake for unveiling the flipped bit; the honest slot holds the genuine
  // purification, which trivially passes the test.
  BipartitePureState fake_flip =
      evidence_bit == 0
          ? BipartitePureState::create(
                family.dim_a, family.dim_b,
                combine(canon.m_basis0, canon.m_basis1, -c, s))
          : BipartitePureState::create(
                family.dim_a, family.dim_b,
                combine(canon.m_basis0, canon.m_basis1, s, c));

  std::array<BipartitePureState, 2> fakes =
      evidence_bit == 0
          ? std::array<BipartitePureState, 2>{honest_initial, fake_flip}
          : std::array<BipartitePureState, 2>{fake_flip, honest_initial};
  return CheatPlan::create({StrategyKind::Mayers, evidence_bit}, honest_initial,
                           std::move(fakes));
}

CheatPlan hk_plan(const ProtocolFamily& family) {
  CanonicalStates canon = build_canonical(family);
  Matrix avg = 0.5 * (canon.rho0.matrix + canon.rho1.matrix);
  DensityOperator rho_bar =
      DensityOperator::create(Space::b(family.dim_b), std::move(avg));
  BipartitePureState initial = purify(rho_bar, family.dim_a);

  const double r = 1.0 / std::sqrt(2.0);
  BipartitePureState fake0 = BipartitePureState::create(
      family.dim_a, family.dim_b, combine(canon.m_basis0, canon.m_basis1, r, r));
  BipartitePureState fake1 = BipartitePureState::create(
      family.dim_a, family.dim_b,
      combine(canon.m_basis0, canon.m_basis1, -r, r));
  return CheatPlan::create({StrategyKind::HardyKent, 0}, std::move(initial),
                           {std::move(fake0), std::move(fake1)});
}

Matrix switching_unitary(const BipartitePureState& from,
                         const BipartitePureState& to) {
  if (from.dim_a != to.dim_a || from.dim_b != to.dim_b) {
    throw std::invalid_argument("switching_unitary: dimension mismatch");
  }
  const Matrix rho_from = from.marginal(Subsystem::B).matrix;
  const Matrix rho_to = to.marginal(Subsystem::B).matrix;
  if (max_abs(rho_from - rho_to) > kMarginalMatch) {
    throw std::invalid_argument(
        "switching_unitary: states have different B marginals, no local "
        "unitary on A connects them");
  }

  // Shared Schmidt frame on B from the averaged marginal; the matching
  // A-side frames are the contractions against it.
  Spectrum spec = hermitian_eig(Matrix(0.5 * (rho_from + rho_to)));
  Eigen::Index rank = 0;
  while (rank < spec.eigenvalues.size() &&
         spec.eigenvalues(rank) > tol::support_cutoff) {
    ++rank;
  }
  Matrix a_from(from.dim_a, rank);
  Matrix a_to(from.dim_a, rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const double w = 1.0 / std::sqrt(spec.eigenvalues(k));
    a_from.col(k) =
        w * from.coefficient_matrix() * spec.eigenvectors.col(k).conjugate();
    a_to.col(k) =
        w * to.coefficient_matrix() * spec.eigenvectors.col(k).conjugate();
  }
  Matrix full_from = complete_frame(a_from, from.dim_a);
  Matrix full_to = complete_frame(a_to, from.dim_a);
  return full_to * full_from.adjoint();
}

double alice_detection_bound(const BipartitePureState& fake,
                             const BipartitePureState& honest) {
  if (fake.dim_a != honest.dim_a || fake.dim_b != honest.dim_b) {
    throw std::invalid_argument("alice_detection_bound: dimension mismatch");
  }
  const double o = std::abs(overlap(honest, fake));
  return std::clamp(1.0 - o * o, 0.0, 1.0);
}

}  // namespace qbc
