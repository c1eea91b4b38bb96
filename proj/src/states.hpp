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

#pragma once

#include <utility>
#include <vector>

#include "linalg.hpp"

namespace qbc {

enum class SpaceLabel { A, B, AB };

// Labeled Hilbert space. For AB both factor dimensions are recorded so that
// marginals can be taken without extra bookkeeping at the call site.
struct Space {
  SpaceLabel label;
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;

  static Space a(Eigen::Index d) { return {SpaceLabel::A, d, 0}; }
  static Space b(Eigen::Index d) { return {SpaceLabel::B, 0, d}; }
  static Space ab(Eigen::Index da, Eigen::Index db) {
    return {SpaceLabel::AB, da, db};
  }
  Eigen::Index total() const;
  bool operator==(const Space& o) const = default;
};

// Hermitian, positive semidefinite, unit-trace operator on a labeled space.
struct DensityOperator {
  Space space;
  Matrix matrix;

  static DensityOperator create(Space space, Matrix matrix);
  Eigen::Index dim() const { return matrix.rows(); }
};

// Unit vector on H_A (x) H_B, joint index a * dim_b + b.
struct BipartitePureState {
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  Vector amplitudes;

  static BipartitePureState create(Eigen::Index dim_a, Eigen::Index dim_b,
                                   Vector amplitudes);
  Matrix density() const { return amplitudes * amplitudes.adjoint(); }
  // dim_a x dim_b reshape of the amplitudes.
  Matrix coefficient_matrix() const;
  DensityOperator marginal(Subsystem keep) const;
};

inline Complex overlap(const BipartitePureState& x, const BipartitePureState& y) {
  return x.amplitudes.dot(y.amplitudes);
}

struct SchmidtForm {
  std::vector<double> coefficients;  // descending, each > 0
  Matrix basis_a;                    // dim_a x rank, orthonormal columns
  Matrix basis_b;                    // dim_b x rank, orthonormal columns
};

// Honest-state family: angle theta in [0, pi/4], the spectra of the two
// orthogonal block states on H_B, and the subsystem dimensions. Block
// [0, r0) of the B basis hosts the first state, [r0, r0+r1) the second,
// so their orthogonality is structural, not numerical.
struct ProtocolFamily {
  double theta = 0.0;
  std::vector<double> spectrum0;
  std::vector<double> spectrum1;
  Eigen::Index dim_a = 2;
  Eigen::Index dim_b = 2;

  static ProtocolFamily create(double theta, std::vector<double> spectrum0,
                               std::vector<double> spectrum1,
                               Eigen::Index dim_a, Eigen::Index dim_b);
  // dim_a = dim_b = 2 with pure block spectra: the model the protocol
  // simulator runs on.
  static ProtocolFamily minimal(double theta);
  bool is_minimal() const;
  Eigen::Index rank0() const { return static_cast<Eigen::Index>(spectrum0.size()); }
  Eigen::Index rank1() const { return static_cast<Eigen::Index>(spectrum1.size()); }
};

struct CanonicalStates {
  BipartitePureState psi0;
  BipartitePureState psi1;
  DensityOperator rho0;      // on B
  DensityOperator rho1;      // on B
  DensityOperator rho_hat0;  // on B, block state
  DensityOperator rho_hat1;  // on B, block state
  // The two orthonormal joint states whose span is the subspace M that
  // carries every optimal fake state.
  BipartitePureState m_basis0;
  BipartitePureState m_basis1;
};

CanonicalStates build_canonical(const ProtocolFamily& family);

SchmidtForm schmidt_decompose(const BipartitePureState& state);

// Canonical purification sum_i sqrt(lambda_i) |i>_A |v_i>_B with the
// deterministic hermitian_eig ordering. Requires dim_a >= rank(rho).
BipartitePureState purify(const DensityOperator& rho, Eigen::Index dim_a);

// Evidence states the honest parties could sign off on: orthogonal joint
// states whose eigenvectors carry the classical record on subsystem A and
// whose B marginals are the family marginals. A mixing list of length one
// yields the pure canonical purification; longer lists yield the state
// dephased in an A basis whose diagonal realizes the requested weights.
std::pair<DensityOperator, DensityOperator> build_evidence_states(
    const ProtocolFamily& family, const std::vector<double>& mixing0,
    const std::vector<double>& mixing1);

// Mutually orthogonal purifications of the marginals of two orthogonal
// evidence states with the classical-label structure on A. Rejects inputs
// whose eigenvectors carry cross terms on A above 1e-8.
std::pair<BipartitePureState, BipartitePureState> orthogonal_purifications(
    const DensityOperator& chi0, const DensityOperator& chi1);

// (U (x) I_B) |state> for a unitary U on H_A.
BipartitePureState apply_unitary_a(const BipartitePureState& state,
                                   const Matrix& u);

}  // namespace qbc
