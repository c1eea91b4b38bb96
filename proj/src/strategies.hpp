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

#include <array>

#include "states.hpp"

namespace qbc {

enum class StrategyKind { Honest, Mayers, HardyKent };

struct Strategy {
  StrategyKind kind = StrategyKind::Honest;
  // For Mayers: the bit whose marginal was honestly transmitted. The
  // strategy is asymmetric in this bit; Hardy-Kent has no such parameter.
  int evidence_bit = 0;
};

// What Alice prepares in the commit phase and the states she rotates to at
// opening time, indexed by the bit she claims. Every fake has the same B
// marginal as the initial state, so the commit-phase view cannot betray her.
struct CheatPlan {
  Strategy strategy;
  BipartitePureState initial_state;
  std::array<BipartitePureState, 2> fake_states;

  static CheatPlan create(Strategy strategy, BipartitePureState initial,
                          std::array<BipartitePureState, 2> fakes);
};

// Alice transmits the marginal for evidence_bit; the fake for the flipped
// bit attains the maximal overlap F(rho0, rho1) with the honest state.
CheatPlan mayers_plan(const ProtocolFamily& family, int evidence_bit);

// Alice transmits the average marginal; both fakes attain overlap
// sqrt((1 + F)/2) with their honest states, symmetrically in the bit.
CheatPlan hk_plan(const ProtocolFamily& family);

// Unitary on H_A mapping one purification onto another with the same B
// marginal, built by matching the A-side Schmidt frames on the marginal's
// support and completing with a deterministic Gram-Schmidt elsewhere.
Matrix switching_unitary(const BipartitePureState& from,
                         const BipartitePureState& to);

// Lower bound 1 - |<honest|fake>|^2 on the probability that the opening
// test exposes the fake.
double alice_detection_bound(const BipartitePureState& fake,
                             const BipartitePureState& honest);

}  // namespace qbc
