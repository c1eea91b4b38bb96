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

#include <Eigen/Dense>
#include <complex>

namespace qbc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances shared across the library. They are sized for
// double precision on Hilbert spaces of dimension <= ~64.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double orthonormal = 1e-10;
inline constexpr double reconstruction = 1e-9;
inline constexpr double psd_floor = -1e-12;
inline constexpr double support_cutoff = 1e-12;
inline constexpr double degeneracy_gap = 1e-10;
}  // namespace tol

enum class Subsystem { A, B };

// Eigendecomposition of a Hermitian matrix with a deterministic ordering:
// eigenvalues descending, degenerate blocks re-orthonormalized and ordered
// lexicographically by the (real, imag) entry sequence of the phase-fixed
// eigenvectors.
struct Spectrum {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // orthonormal columns, same order
};

double max_abs(const Matrix& m);
bool all_finite(const Matrix& m);
bool is_hermitian(const Matrix& m, double tolerance = tol::hermitian);

// Kronecker product; dimensions multiply.
Matrix tensor_product(const Matrix& a, const Matrix& b);

// Marginal of an operator on H_A (x) H_B, joint index a * dim_b + b.
// The subsystem named by `over` is traced out; trace is preserved.
Matrix partial_trace(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b,
                     Subsystem over);

Spectrum hermitian_eig(const Matrix& m);

// Square root of a positive semidefinite matrix. Eigenvalues in
// [tol::psd_floor, 0) are clamped to zero; anything lower is rejected.
Matrix psd_sqrt(const Matrix& m);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix& m);

// B-space vector <a| psi> for |psi> on H_A (x) H_B.
Vector contract_a(const Vector& joint, const Vector& a_vec, Eigen::Index dim_a,
                  Eigen::Index dim_b);

// B-space operator <a| M |a> for M on H_A (x) H_B.
Matrix sandwich_a(const Matrix& joint, const Vector& a_vec, Eigen::Index dim_a,
                  Eigen::Index dim_b);

}  // namespace qbc
