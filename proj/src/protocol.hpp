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

#include <cstdint>
#include <optional>
#include <vector>

#include "rng.hpp"
#include "strategies.hpp"

namespace qbc {

// Alice's announced projection basis on H_A together with, per outcome, the
// orthogonal projector pair on H_B that Bob tests against. Each basis vector
// overlaps both joint basis states equally, which is exactly what makes the
// two induced B states orthogonal and the test conclusive.
struct MeasurementBasis {
  Matrix vectors;  // dim_a columns e_j
  std::vector<std::array<Matrix, 2>> induced_bob_tests;
};

// Closed-form basis for the minimal qubit model. Other families are
// rejected: no constructive basis is defined for them.
MeasurementBasis consistency_basis(const ProtocolFamily& family);

struct Transcript {
  Strategy strategy;
  std::optional<int> committed_bit;
  int unveiled_bit = 0;
  int alice_outcome = 0;
  std::optional<int> bob_outcome;  // empty = inconclusive
  bool consistent = false;
  std::uint64_t seed = 0;
};

struct SimulationStats {
  std::uint64_t trials = 0;
  std::uint64_t inconsistencies = 0;
  double empirical_rate = 0.0;
  double analytic_bound = 0.0;
  double binomial_3sigma = 0.0;
  bool within_band = false;  // |empirical - analytic| <= 3 sigma
  std::uint64_t seed = 0;
};

enum class HonestPreparation { PurePsi, EvidenceChi };

// Honest commit/open runs. Alice prepares the purification (or the rank-2
// evidence state), projects her subsystem, announces the induced test, and
// Bob measures. The inconsistency count is structurally zero.
SimulationStats run_honest(const ProtocolFamily& family, int b,
                           std::uint64_t trials, std::uint64_t seed,
                           HonestPreparation preparation = HonestPreparation::PurePsi,
                           std::vector<Transcript>* transcripts = nullptr);

// Alice holds plan.fake_states[unveil] at opening time; the empirical
// detection rate is compared against the analytic bound for that fake.
SimulationStats run_cheat(const ProtocolFamily& family, const CheatPlan& plan,
                          int unveil, std::uint64_t trials, std::uint64_t seed,
                          std::vector<Transcript>* transcripts = nullptr);

// Like run_cheat but with an explicit state held by Alice at opening time;
// used to probe suboptimal fakes and random local rotations.
SimulationStats run_cheat_with_state(const ProtocolFamily& family,
                                     const BipartitePureState& fake, int unveil,
                                     std::uint64_t trials, std::uint64_t seed);

// Bob distinguishes the two marginals with the block-support measurement and
// a maximum-likelihood guess; the committed bit is drawn uniformly per trial.
SimulationStats run_bob_attack(const ProtocolFamily& family,
                               std::uint64_t trials, std::uint64_t seed);

// Born-rule sampling over a complete orthogonal projector set. Outcomes with
// weight below the support cutoff are never drawn.
int born_sample(const Vector& state, const std::vector<Matrix>& projectors,
                Rng& rng);
int born_sample(const Matrix& density, const std::vector<Matrix>& projectors,
                Rng& rng);

}  // namespace qbc
