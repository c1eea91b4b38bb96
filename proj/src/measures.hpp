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

#include <optional>

#include "states.hpp"

namespace qbc {

// Uhlmann fidelity Tr sqrt(sqrt(rho1) rho0 sqrt(rho1)), clamped to [0, 1].
double fidelity(const DensityOperator& rho0, const DensityOperator& rho1);

// Closed form |sin 2theta| for the canonical family; spectrum independent.
double fidelity_canonical(double theta);

// Helstrom bound 1/2 - Tr|rho0 - rho1| / 4 on the error of distinguishing
// equiprobable states.
double bob_error(const DensityOperator& rho0, const DensityOperator& rho1);

// Tr|rho0 - rho1| / 2.
double distinguishability(const DensityOperator& rho0,
                          const DensityOperator& rho1);

// -p log2 p - (1-p) log2(1-p); rejects p outside [0, 1] by more than 1e-12.
double binary_entropy(double p);

double bob_information(const DensityOperator& rho0, const DensityOperator& rho1);

// Scalar forms, parameterized by the fidelity of the marginals.
double bob_error_from_fidelity(double f);
double bob_information_from_fidelity(double f);
double mayers_error_from_fidelity(double f);
std::optional<double> mayers_information_from_fidelity(double f);
double hk_error_from_fidelity(double f);
double hk_information_from_fidelity(double f);

double mayers_error_bound(const DensityOperator& rho0,
                          const DensityOperator& rho1);

// Empty when the strategy does not apply (fidelity below 1/sqrt(2), where
// the error bound exceeds 1/2).
std::optional<double> mayers_information(const DensityOperator& rho0,
                                         const DensityOperator& rho1);

double hk_error_bound(const DensityOperator& rho0, const DensityOperator& rho1);
double hk_information(const DensityOperator& rho0, const DensityOperator& rho1);

// Von Neumann entropy of the B marginal, in bits.
double entanglement_entropy(const BipartitePureState& state);

struct MeasureReport {
  double fidelity = 0.0;
  double distinguishability = 0.0;
  double bob_error = 0.0;
  double bob_information = 0.0;
  double mayers_error = 0.0;
  std::optional<double> mayers_information;
  double hk_error = 0.0;
  double hk_information = 0.0;
  double entanglement = 0.0;
  double info_commit = 0.0;  // information carried by the commit phase
  double info_open = 0.0;    // remainder revealed at opening
};

// All measures of one family. Throws if the assembled numbers violate the
// entanglement bound on Alice's information, which would indicate a broken
// construction upstream.
MeasureReport report(const ProtocolFamily& family);

}  // namespace qbc
