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

#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qbc {

namespace {

void require_finite(const Matrix& m, const char* who) {
  if (!all_finite(m)) {
    throw std::invalid_argument(std::string(who) +
                                ": matrix has non-finite entries");
  }
}

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is not square");
  }
}

void require_hermitian(const Matrix& m, const char* who) {
  require_square(m, who);
  if (!is_hermitian(m)) {
    throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
  }
}

// Multiply the column by a phase so its first entry above the support cutoff
// becomes real positive.
void fix_column_phase(Matrix& m, Eigen::Index col) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Complex z = m(r, col);
    if (std::abs(z) > tol::support_cutoff) {
      m.col(col) *= std::conj(z) / std::abs(z);
      return;
    }
  }
}

// Lexicographic comparison of the (real, imag) entry sequences.
bool column_lex_less(const Matrix& m, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Complex x = m(r, a);
    const Complex y = m(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tolerance;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  require_finite(a, "tensor_product");
  require_finite(b, "tensor_product");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b,
                     Subsystem over) {
  require_finite(m, "partial_trace");
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b ||
      m.cols() != dim_a * dim_b) {
    throw std::invalid_argument(
        "partial_trace: matrix dimensions do not match dim_a * dim_b");
  }
  if (over == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (Eigen::Index a = 0; a < dim_a; ++a) {
      out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
    }
    return out;
  }
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      Complex s{0.0, 0.0};
      for (Eigen::Index b = 0; b < dim_b; ++b) {
        s += m(i * dim_b + b, j * dim_b + b);
      }
      out(i, j) = s;
    }
  }
  return out;
}

Spectrum hermitian_eig(const Matrix& m) {
  require_finite(m, "hermitian_eig");
  require_hermitian(m, "hermitian_eig");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      Matrix(0.5 * (m + m.adjoint())));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }

  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Eigen returns ascending order; flip to descending.
  std::reverse(order.begin(), order.end());

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = solver.eigenvalues()(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) =
        solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }

  // Canonicalize degenerate blocks: re-orthonormalize (modified Gram-Schmidt),
  // fix global phases, then order lexicographically.
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n &&
           out.eigenvalues(end - 1) - out.eigenvalues(end) <= tol::degeneracy_gap) {
      ++end;
    }
    for (Eigen::Index k = start; k < end; ++k) {
      for (Eigen::Index l = start; l < k; ++l) {
        out.eigenvectors.col(k) -=
            out.eigenvectors.col(l).dot(out.eigenvectors.col(k)) *
            out.eigenvectors.col(l);
      }
      out.eigenvectors.col(k).normalize();
      fix_column_phase(out.eigenvectors, k);
    }
    std::vector<Eigen::Index> block(static_cast<std::size_t>(end - start));
    std::iota(block.begin(), block.end(), start);
    std::sort(block.begin(), block.end(), [&](Eigen::Index a, Eigen::Index b) {
      return column_lex_less(out.eigenvectors, a, b);
    });
    Matrix cols(n, end - start);
    for (Eigen::Index k = 0; k < end - start; ++k) {
      cols.col(k) = out.eigenvectors.col(block[static_cast<std::size_t>(k)]);
    }
    out.eigenvectors.block(0, start, n, end - start) = cols;
    start = end;
  }
  return out;
}

Matrix psd_sqrt(const Matrix& m) {
  Spectrum s = hermitian_eig(m);
  RealVector roots(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    double v = s.eigenvalues(i);
    if (v < tol::psd_floor) {
      throw std::invalid_argument(
          "psd_sqrt: matrix is not positive semidefinite (eigenvalue " +
          std::to_string(v) + ")");
    }
    // Dead-band around zero: noise-level eigenvalues would otherwise blow
    // up to sqrt scale and pollute idempotent inputs.
    roots(i) = v <= tol::support_cutoff ? 0.0 : std::sqrt(v);
  }
  return s.eigenvectors * roots.asDiagonal() * s.eigenvectors.adjoint();
}

double trace_norm(const Matrix& m) {
  Spectrum s = hermitian_eig(m);
  return s.eigenvalues.cwiseAbs().sum();
}

Vector contract_a(const Vector& joint, const Vector& a_vec, Eigen::Index dim_a,
                  Eigen::Index dim_b) {
  if (joint.size() != dim_a * dim_b || a_vec.size() != dim_a) {
    throw std::invalid_argument("contract_a: dimension mismatch");
  }
  Vector out = Vector::Zero(dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    out += std::conj(a_vec(a)) * joint.segment(a * dim_b, dim_b);
  }
  return out;
}

Matrix sandwich_a(const Matrix& joint, const Vector& a_vec, Eigen::Index dim_a,
                  Eigen::Index dim_b) {
  if (joint.rows() != dim_a * dim_b || joint.cols() != dim_a * dim_b ||
      a_vec.size() != dim_a) {
    throw std::invalid_argument("sandwich_a: dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    for (Eigen::Index ap = 0; ap < dim_a; ++ap) {
      out += std::conj(a_vec(a)) * a_vec(ap) *
             joint.block(a * dim_b, ap * dim_b, dim_b, dim_b);
    }
  }
  return out;
}

}  // namespace qbc
