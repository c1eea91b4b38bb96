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

#include "measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbc {

namespace {

constexpr double kInvSqrt2 = 0.707106781186547524400844362105;

void require_same_space(const DensityOperator& a, const DensityOperator& b,
                        const char* who) {
  if (!(a.space == b.space)) {
    throw std::invalid_argument(std::string(who) +
                                ": operators live on different spaces");
  }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double fidelity(const DensityOperator& rho0, const DensityOperator& rho1) {
  require_same_space(rho0, rho1, "fidelity");
  const Matrix root1 = psd_sqrt(rho1.matrix);
  Matrix inner = root1 * rho0.matrix * root1;
  inner = 0.5 * (inner + inner.adjoint());
  Spectrum spec = hermitian_eig(inner);
  double f = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double v = spec.eigenvalues(i);
    if (v < tol::psd_floor) {
      throw std::runtime_error(
          "fidelity: inner product matrix has a negative eigenvalue beyond "
          "tolerance");
    }
    f += std::sqrt(std::max(v, 0.0));
  }
  return clamp01(f);
}

double fidelity_canonical(double theta) { return std::abs(std::sin(2.0 * theta)); }

double bob_error(const DensityOperator& rho0, const DensityOperator& rho1) {
  require_same_space(rho0, rho1, "bob_error");
  return 0.5 - 0.25 * trace_norm(rho0.matrix - rho1.matrix);
}

double distinguishability(const DensityOperator& rho0,
                          const DensityOperator& rho1) {
  require_same_space(rho0, rho1, "distinguishability");
  return 0.5 * trace_norm(rho0.matrix - rho1.matrix);
}

double binary_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  }
  p = clamp01(p);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double bob_information(const DensityOperator& rho0,
                       const DensityOperator& rho1) {
  return 1.0 - binary_entropy(bob_error(rho0, rho1));
}

double bob_error_from_fidelity(double f) {
  return (1.0 - std::sqrt(std::max(0.0, 1.0 - f * f))) / 2.0;
}

double bob_information_from_fidelity(double f) {
  return 1.0 - binary_entropy(bob_error_from_fidelity(f));
}

double mayers_error_from_fidelity(double f) { return clamp01(1.0 - f * f); }

std::optional<double> mayers_information_from_fidelity(double f) {
  if (f < kInvSqrt2 - 1e-12) return std::nullopt;
  return 0.5 + 0.5 * (1.0 - binary_entropy(mayers_error_from_fidelity(f)));
}

double hk_error_from_fidelity(double f) { return clamp01((1.0 - f) / 2.0); }

double hk_information_from_fidelity(double f) {
  return 1.0 - binary_entropy(hk_error_from_fidelity(f));
}

double mayers_error_bound(const DensityOperator& rho0,
                          const DensityOperator& rho1) {
  return mayers_error_from_fidelity(fidelity(rho0, rho1));
}

std::optional<double> mayers_information(const DensityOperator& rho0,
                                         const DensityOperator& rho1) {
  return mayers_information_from_fidelity(fidelity(rho0, rho1));
}

double hk_error_bound(const DensityOperator& rho0,
                      const DensityOperator& rho1) {
  return hk_error_from_fidelity(fidelity(rho0, rho1));
}

double hk_information(const DensityOperator& rho0,
                      const DensityOperator& rho1) {
  return hk_information_from_fidelity(fidelity(rho0, rho1));
}

double entanglement_entropy(const BipartitePureState& state) {
  Spectrum spec = hermitian_eig(state.marginal(Subsystem::B).matrix);
  double s = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double v = spec.eigenvalues(i);
    if (v > tol::support_cutoff) s -= v * std::log2(v);
  }
  return s;
}

MeasureReport report(const ProtocolFamily& family) {
  CanonicalStates canon = build_canonical(family);

  MeasureReport r;
  r.fidelity = fidelity(canon.rho0, canon.rho1);
  r.distinguishability = distinguishability(canon.rho0, canon.rho1);
  r.bob_error = bob_error(canon.rho0, canon.rho1);
  r.bob_information = 1.0 - binary_entropy(r.bob_error);
  r.mayers_error = mayers_error_from_fidelity(r.fidelity);
  r.mayers_information = mayers_information_from_fidelity(r.fidelity);
  r.hk_error = hk_error_from_fidelity(r.fidelity);
  r.hk_information = hk_information_from_fidelity(r.fidelity);
  r.entanglement = std::min(entanglement_entropy(canon.psi0),
                            entanglement_entropy(canon.psi1));
  r.info_commit = r.bob_information;
  r.info_open = 1.0 - r.bob_information;

  if (r.hk_information > r.entanglement + 1e-9 ||
      (r.mayers_information &&
       *r.mayers_information > r.entanglement + 1e-9)) {
    throw std::runtime_error(
        "report: Alice's information exceeds the entanglement bound; the "
        "family construction is inconsistent");
  }
  return r;
}

}  // namespace qbc
