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

#include <vector>

#include "linalg.hpp"
#include "rng.hpp"

namespace qbc {

inline Matrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                     Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  return m;
}

inline Matrix random_hermitian(Eigen::Index n, Rng& rng) {
  Matrix g = random_gaussian_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

inline Matrix random_psd(Eigen::Index n, Rng& rng) {
  Matrix g = random_gaussian_matrix(n, n, rng);
  return g * g.adjoint();
}

inline Matrix random_density(Eigen::Index n, Rng& rng) {
  Matrix p = random_psd(n, rng);
  return p / p.trace().real();
}

inline Vector random_pure(Eigen::Index n, Rng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
  }
  v.normalize();
  return v;
}

// Haar-distributed unitary via QR of a Gaussian matrix with the phases of
// the R diagonal absorbed.
inline Matrix random_unitary(Eigen::Index n, Rng& rng) {
  Matrix g = random_gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

// Probability vector with entries bounded away from zero.
inline std::vector<double> random_probabilities(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = 0.05 - std::log(1.0 - rng.next_double());
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace qbc
