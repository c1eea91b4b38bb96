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

#include "protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qbc {

namespace {

void require_minimal(const ProtocolFamily& family, const char* who) {
  if (!family.is_minimal()) {
    throw std::invalid_argument(
        std::string(who) +
        ": only the minimal qubit model (dim_a = dim_b = 2, pure block "
        "spectra) has a constructive consistency test");
  }
}

void validate_projectors(const std::vector<Matrix>& projectors,
                         Eigen::Index dim, const char* who) {
  if (projectors.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty projector set");
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& p : projectors) {
    if (p.rows() != dim || p.cols() != dim) {
      throw std::invalid_argument(std::string(who) +
                                  ": projector dimension mismatch");
    }
    sum += p;
  }
  if (max_abs(sum - Matrix::Identity(dim, dim)) > 1e-9) {
    throw std::invalid_argument(std::string(who) +
                                ": projector set is incomplete");
  }
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if (max_abs(projectors[i] * projectors[j]) > 1e-9) {
        throw std::invalid_argument(std::string(who) +
                                    ": projectors are not orthogonal");
      }
    }
  }
}

// Draw an index from nonnegative weights; entries below the support cutoff
// are clamped to zero and can never be drawn.
int sample_from_weights(std::vector<double> weights, Rng& rng,
                        const char* who) {
  double total = 0.0;
  for (double& w : weights) {
    if (w < tol::support_cutoff) w = 0.0;
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(who) +
                                ": outcome probabilities sum to " +
                                std::to_string(total) + ", not 1");
  }
  const double u = rng.next_double() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Guard against accumulated rounding at the top end.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return static_cast<int>(i);
  }
  return 0;
}

double three_sigma(double p, std::uint64_t trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

SimulationStats finalize(std::uint64_t trials, std::uint64_t inconsistencies,
                         double analytic, std::uint64_t seed) {
  SimulationStats stats;
  stats.trials = trials;
  stats.inconsistencies = inconsistencies;
  stats.empirical_rate =
      trials == 0 ? 0.0
                  : static_cast<double>(inconsistencies) / static_cast<double>(trials);
  stats.analytic_bound = analytic;
  stats.binomial_3sigma = three_sigma(analytic, trials == 0 ? 1 : trials);
  stats.within_band =
      std::abs(stats.empirical_rate - analytic) <= stats.binomial_3sigma;
  stats.seed = seed;
  return stats;
}

struct OpeningTest {
  MeasurementBasis basis;
  std::vector<double> alice_weights;
  // Per Alice outcome: weights of Bob's two test outcomes.
  std::vector<std::array<double, 2>> bob_weights;
};

// Precompute the full outcome distribution of one opening round for a fixed
// joint state. Sampling a trial then needs two weighted draws.
OpeningTest prepare_opening(const ProtocolFamily& family, const Vector* pure,
                            const Matrix* mixed) {
  OpeningTest test{consistency_basis(family), {}, {}};
  const Eigen::Index da = family.dim_a;
  const Eigen::Index db = family.dim_b;
  for (Eigen::Index j = 0; j < test.basis.vectors.cols(); ++j) {
    const Vector e = test.basis.vectors.col(j);
    double pj = 0.0;
    Matrix conditional;
    if (pure != nullptr) {
      Vector w = contract_a(*pure, e, da, db);
      pj = w.squaredNorm();
      conditional = w * w.adjoint();
    } else {
      conditional = sandwich_a(*mixed, e, da, db);
      pj = conditional.trace().real();
    }
    test.alice_weights.push_back(pj);
    std::array<double, 2> bw{0.0, 0.0};
    if (pj > tol::support_cutoff) {
      for (int i = 0; i < 2; ++i) {
        bw[static_cast<std::size_t>(i)] =
            (test.basis.induced_bob_tests[static_cast<std::size_t>(j)]
                                         [static_cast<std::size_t>(i)] *
             conditional)
                .trace()
                .real() /
            pj;
      }
    }
    test.bob_weights.push_back(bw);
  }
  return test;
}

SimulationStats run_opening_rounds(const OpeningTest& test, Strategy strategy,
                                   std::optional<int> committed, int unveil,
                                   double analytic, std::uint64_t trials,
                                   std::uint64_t seed,
                                   std::vector<Transcript>* transcripts) {
  std::uint64_t inconsistencies = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    const int j = sample_from_weights(test.alice_weights, rng, "run");
    const auto& bw = test.bob_weights[static_cast<std::size_t>(j)];
    std::optional<int> bob;
    if (bw[0] >= tol::support_cutoff || bw[1] >= tol::support_cutoff) {
      bob = sample_from_weights({bw[0], bw[1]}, rng, "run");
    }
    const bool consistent = bob.has_value() && *bob == unveil;
    if (!consistent) ++inconsistencies;
    if (transcripts != nullptr) {
      transcripts->push_back(
          {strategy, committed, unveil, j, bob, consistent, seed});
    }
  }
  return finalize(trials, inconsistencies, analytic, seed);
}

}  // namespace

MeasurementBasis consistency_basis(const ProtocolFamily& family) {
  require_minimal(family, "consistency_basis");
  CanonicalStates canon = build_canonical(family);
  const Eigen::Index da = family.dim_a;
  const Eigen::Index db = family.dim_b;

  MeasurementBasis basis;
  basis.vectors.resize(da, 2);
  const double r = 1.0 / std::sqrt(2.0);
  basis.vectors << r, r, r, -r;

  for (Eigen::Index j = 0; j < 2; ++j) {
    const Vector e = basis.vectors.col(j);
    // Equal overlap with both joint basis states (the basis condition).
    const double w0 =
        contract_a(canon.m_basis0.amplitudes, e, da, db).squaredNorm();
    const double w1 =
        contract_a(canon.m_basis1.amplitudes, e, da, db).squaredNorm();
    if (std::abs(w0 - w1) > 1e-9) {
      throw std::runtime_error(
          "consistency_basis: basis condition violated in construction");
    }
    Vector c0 = contract_a(canon.psi0.amplitudes, e, da, db);
    Vector c1 = contract_a(canon.psi1.amplitudes, e, da, db);
    c0.normalize();
    c1.normalize();
    if (std::abs(c0.dot(c1)) > 1e-9) {
      throw std::runtime_error(
          "consistency_basis: induced test states are not orthogonal");
    }
    basis.induced_bob_tests.push_back(
        {Matrix(c0 * c0.adjoint()), Matrix(c1 * c1.adjoint())});
  }
  return basis;
}

SimulationStats run_honest(const ProtocolFamily& family, int b,
                           std::uint64_t trials, std::uint64_t seed,
                           HonestPreparation preparation,
                           std::vector<Transcript>* transcripts) {
  require_minimal(family, "run_honest");
  if (b != 0 && b != 1) {
    throw std::invalid_argument("run_honest: bit must be 0 or 1");
  }
  OpeningTest test;
  if (preparation == HonestPreparation::PurePsi) {
    CanonicalStates canon = build_canonical(family);
    const Vector& psi = (b == 0 ? canon.psi0 : canon.psi1).amplitudes;
    test = prepare_opening(family, &psi, nullptr);
  } else {
    auto [chi0, chi1] = build_evidence_states(family, {0.5, 0.5}, {0.5, 0.5});
    const Matrix& chi = (b == 0 ? chi0 : chi1).matrix;
    test = prepare_opening(family, nullptr, &chi);
  }
  return run_opening_rounds(test, {StrategyKind::Honest, b}, b, b, 0.0,
                            trials, seed, transcripts);
}

SimulationStats run_cheat(const ProtocolFamily& family, const CheatPlan& plan,
                          int unveil, std::uint64_t trials, std::uint64_t seed,
                          std::vector<Transcript>* transcripts) {
  require_minimal(family, "run_cheat");
  if (unveil != 0 && unveil != 1) {
    throw std::invalid_argument("run_cheat: unveil bit must be 0 or 1");
  }
  CanonicalStates canon = build_canonical(family);
  const BipartitePureState& fake =
      plan.fake_states[static_cast<std::size_t>(unveil)];
  const BipartitePureState& honest = unveil == 0 ? canon.psi0 : canon.psi1;
  const double analytic = alice_detection_bound(fake, honest);
  OpeningTest test = prepare_opening(family, &fake.amplitudes, nullptr);
  return run_opening_rounds(test, plan.strategy, std::nullopt, unveil,
                            analytic, trials, seed, transcripts);
}

SimulationStats run_cheat_with_state(const ProtocolFamily& family,
                                     const BipartitePureState& fake, int unveil,
                                     std::uint64_t trials, std::uint64_t seed) {
  require_minimal(family, "run_cheat_with_state");
  OpeningTest test = prepare_opening(family, &fake.amplitudes, nullptr);
  // Exact detection rate composed from the per-outcome conditional
  // fidelities; for fakes inside the honest two-dimensional subspace this
  // coincides with the overlap bound.
  double analytic = 1.0;
  for (std::size_t j = 0; j < test.alice_weights.size(); ++j) {
    analytic -= test.alice_weights[j] *
                test.bob_weights[j][static_cast<std::size_t>(unveil)];
  }
  return run_opening_rounds(test, {StrategyKind::HardyKent, 0},
                            std::nullopt, unveil, analytic, trials, seed,
                            nullptr);
}

SimulationStats run_bob_attack(const ProtocolFamily& family,
                               std::uint64_t trials, std::uint64_t seed) {
  CanonicalStates canon = build_canonical(family);
  const Eigen::Index db = family.dim_b;
  const Eigen::Index r0 = family.rank0();
  const Eigen::Index r1 = family.rank1();

  std::vector<Matrix> tests;
  Matrix p0 = Matrix::Zero(db, db);
  Matrix p1 = Matrix::Zero(db, db);
  for (Eigen::Index i = 0; i < r0; ++i) p0(i, i) = 1.0;
  for (Eigen::Index j = 0; j < r1; ++j) p1(r0 + j, r0 + j) = 1.0;
  tests.push_back(p0);
  tests.push_back(p1);
  if (r0 + r1 < db) {
    Matrix rest = Matrix::Identity(db, db) - p0 - p1;
    tests.push_back(rest);
  }
  validate_projectors(tests, db, "run_bob_attack");

  // Maximum-likelihood guess per outcome, ties broken toward 0.
  std::vector<int> guess;
  std::vector<std::array<double, 2>> outcome_weights;
  for (const Matrix& p : tests) {
    const double w0 = (p * canon.rho0.matrix).trace().real();
    const double w1 = (p * canon.rho1.matrix).trace().real();
    guess.push_back(w1 > w0 ? 1 : 0);
    outcome_weights.push_back({w0, w1});
  }

  const double analytic =
      (1.0 - std::abs(std::cos(2.0 * family.theta))) / 2.0;
  std::uint64_t errors = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    const int bit = rng.next_bit();
    std::vector<double> weights;
    for (const auto& w : outcome_weights) {
      weights.push_back(w[static_cast<std::size_t>(bit)]);
    }
    const int outcome = sample_from_weights(weights, rng, "run_bob_attack");
    if (guess[static_cast<std::size_t>(outcome)] != bit) ++errors;
  }
  return finalize(trials, errors, analytic, seed);
}

int born_sample(const Vector& state, const std::vector<Matrix>& projectors,
                Rng& rng) {
  validate_projectors(projectors, state.size(), "born_sample");
  std::vector<double> weights;
  for (const Matrix& p : projectors) {
    weights.push_back((state.adjoint() * p * state)(0, 0).real());
  }
  return sample_from_weights(std::move(weights), rng, "born_sample");
}

int born_sample(const Matrix& density, const std::vector<Matrix>& projectors,
                Rng& rng) {
  validate_projectors(projectors, density.rows(), "born_sample");
  std::vector<double> weights;
  for (const Matrix& p : projectors) {
    weights.push_back((p * density).trace().real());
  }
  return sample_from_weights(std::move(weights), rng, "born_sample");
}

}  // namespace qbc
