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

// End-to-end acceptance suite. Prints one pass/fail line per criterion and
// exits nonzero if any fails. argv[1] is the path to the qbc CLI binary.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "measures.hpp"
#include "oracles.hpp"
#include "protocol.hpp"
#include "random_ops.hpp"
#include "states.hpp"
#include "strategies.hpp"

using namespace qbc;

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kInvSqrt2 = 0.707106781186547524400844362105;

int failures = 0;

void report_line(int criterion, bool pass, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL")
            << " - " << detail << "\n";
  if (!pass) ++failures;
}

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
  double seconds = 0.0;
};

RunResult run_cli(const std::string& command) {
  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 8192> buffer{};
  size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.stdout_text.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

struct SweepRow {
  double fidelity = 0.0;
  double theta = 0.0;
  double bob_info = 0.0;
  std::optional<double> mayers_info;
  double hk_info = 0.0;
  double entanglement = 0.0;
  double sum_bob_hk = 0.0;
  std::optional<double> sum_bob_mayers;
};

std::vector<SweepRow> parse_sweep_csv(const std::string& text, bool& header_ok) {
  std::vector<SweepRow> rows;
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  header_ok = line ==
              "fidelity,theta,bob_info,mayers_info,hk_info,entanglement,"
              "sum_bob_hk,sum_bob_mayers";
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream fs(line);
    while (std::getline(fs, field, ',')) fields.push_back(field);
    while (fields.size() < 8) fields.emplace_back();
    SweepRow row;
    row.fidelity = std::stod(fields[0]);
    row.theta = std::stod(fields[1]);
    row.bob_info = std::stod(fields[2]);
    if (!fields[3].empty()) row.mayers_info = std::stod(fields[3]);
    row.hk_info = std::stod(fields[4]);
    row.entanglement = std::stod(fields[5]);
    row.sum_bob_hk = std::stod(fields[6]);
    if (!fields[7].empty()) row.sum_bob_mayers = std::stod(fields[7]);
    rows.push_back(row);
  }
  return rows;
}

// Criteria 1 and 2 share the 101-point sweep emitted by the CLI.
void check_figure_curves(const std::string& cli) {
  RunResult sweep = run_cli(cli + " sweep --grid-points 101 --format csv");
  bool header_ok = false;
  std::vector<SweepRow> rows = parse_sweep_csv(sweep.stdout_text, header_ok);

  bool curves_ok = sweep.exit_code == 0 && header_ok && rows.size() == 101;
  double worst = 0.0;
  for (const SweepRow& row : rows) {
    const double f = row.fidelity;
    const double bob_expected =
        1.0 - oracle::entropy_bits((1.0 - std::sqrt(1.0 - f * f)) / 2.0);
    const double hk_expected = 1.0 - oracle::entropy_bits((1.0 - f) / 2.0);
    worst = std::max(worst, std::abs(row.bob_info - bob_expected));
    worst = std::max(worst, std::abs(row.hk_info - hk_expected));
    if (f >= kInvSqrt2) {
      if (!row.mayers_info.has_value()) {
        curves_ok = false;
        continue;
      }
      const double mayers_expected =
          0.5 + 0.5 * (1.0 - oracle::entropy_bits(1.0 - f * f));
      worst = std::max(worst, std::abs(*row.mayers_info - mayers_expected));
    } else if (row.mayers_info.has_value()) {
      curves_ok = false;
    }
  }
  curves_ok = curves_ok && worst < 1e-9 && sweep.seconds < 5.0;
  {
    std::ostringstream detail;
    detail << "figure curves reproduced; worst residual " << worst << ", "
           << sweep.seconds << " s";
    report_line(1, curves_ok, detail.str());
  }

  bool bound_ok = !rows.empty();
  double worst_excess = -1.0;
  bool equality_only_at_ends = true;
  for (const SweepRow& row : rows) {
    worst_excess = std::max(worst_excess, row.sum_bob_hk - 1.0);
    if (row.sum_bob_mayers) {
      worst_excess = std::max(worst_excess, *row.sum_bob_mayers - 1.0);
    }
    if (std::abs(row.sum_bob_hk - 1.0) <= 1e-6 &&
        !(row.fidelity <= 1e-6 || row.fidelity >= 1.0 - 1e-6)) {
      equality_only_at_ends = false;
    }
  }
  bound_ok = bound_ok && worst_excess <= 1e-9 && equality_only_at_ends;
  {
    std::ostringstream detail;
    detail << "information sums bounded by 1 (max excess " << worst_excess
           << "), equality only at the endpoints";
    report_line(2, bound_ok, detail.str());
  }
}

void check_closed_forms() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(0xacc3ULL);
  double worst_fidelity = 0.0;
  double worst_error = 0.0;
  double worst_identity = 0.0;
  for (int grid = 0; grid < 50; ++grid) {
    const double theta = kPi / 4 * grid / 49.0;
    for (int draw = 0; draw < 10; ++draw) {
      const std::size_t r0 = 1 + rng.next_u64() % 3;
      const std::size_t r1 = 1 + rng.next_u64() % 3;
      const auto dim = static_cast<Eigen::Index>(r0 + r1);
      ProtocolFamily family = ProtocolFamily::create(
          theta, random_probabilities(r0, rng), random_probabilities(r1, rng),
          dim, dim);
      CanonicalStates canon = build_canonical(family);
      const double f = fidelity(canon.rho0, canon.rho1);
      const double d = distinguishability(canon.rho0, canon.rho1);
      worst_fidelity = std::max(
          worst_fidelity, std::abs(f - std::abs(std::sin(2.0 * theta))));
      worst_error = std::max(
          worst_error,
          std::abs(bob_error(canon.rho0, canon.rho1) -
                   (1.0 - std::abs(std::cos(2.0 * theta))) / 2.0));
      worst_identity = std::max(worst_identity, std::abs(f * f + d * d - 1.0));
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  {
    std::ostringstream detail;
    detail << "matrix fidelity and error match closed forms over 500 "
              "families (residuals "
           << worst_fidelity << ", " << worst_error << "), " << seconds
           << " s";
    report_line(3, worst_fidelity < 1e-8 && worst_error < 1e-8 && seconds < 30.0,
                detail.str());
  }
  {
    std::ostringstream detail;
    detail << "fidelity-distinguishability identity residual "
           << worst_identity;
    report_line(4, worst_identity < 1e-9, detail.str());
  }
}

void check_orthogonal_purifications() {
  Rng rng(0xacc5ULL);
  double worst = 0.0;
  bool ok = true;
  for (int draw = 0; draw < 20; ++draw) {
    const std::size_t n0 = 1 + rng.next_u64() % 3;
    const std::size_t n1 = 1 + rng.next_u64() % 3;
    const auto da = static_cast<Eigen::Index>(n0 + n1);
    const Eigen::Index db = 2 + static_cast<Eigen::Index>(rng.next_u64() % 3);
    auto make_chi = [&](std::size_t count, Eigen::Index offset) {
      std::vector<double> weights =
          draw % 3 == 0
              ? std::vector<double>(count, 1.0 / static_cast<double>(count))
              : random_probabilities(count, rng);
      Matrix chi = Matrix::Zero(da * db, da * db);
      for (std::size_t k = 0; k < count; ++k) {
        Vector b = random_pure(db, rng);
        Vector joint = Vector::Zero(da * db);
        joint.segment((offset + static_cast<Eigen::Index>(k)) * db, db) = b;
        chi += weights[k] * joint * joint.adjoint();
      }
      return DensityOperator::create(Space::ab(da, db), std::move(chi));
    };
    try {
      DensityOperator chi0 = make_chi(n0, 0);
      DensityOperator chi1 = make_chi(n1, static_cast<Eigen::Index>(n0));
      auto [psi0, psi1] = orthogonal_purifications(chi0, chi1);
      worst = std::max(worst, std::abs(overlap(psi0, psi1)));
      worst = std::max(
          worst, max_abs(psi0.marginal(Subsystem::B).matrix -
                         partial_trace(chi0.matrix, da, db, Subsystem::A)));
      worst = std::max(
          worst, max_abs(psi1.marginal(Subsystem::B).matrix -
                         partial_trace(chi1.matrix, da, db, Subsystem::A)));
    } catch (const std::exception& e) {
      ok = false;
    }
  }
  std::ostringstream detail;
  detail << "orthogonal purifications over 20 random classical pairs, worst "
            "residual "
         << worst;
  report_line(5, ok && worst < 1e-9, detail.str());
}

void check_honest_runs() {
  std::uint64_t total_inconsistencies = 0;
  std::uint64_t runs = 0;
  for (int grid = 0; grid < 10; ++grid) {
    const double theta = kPi / 4 * grid / 9.0;
    ProtocolFamily family = ProtocolFamily::minimal(theta);
    for (int b = 0; b < 2; ++b) {
      for (HonestPreparation prep :
           {HonestPreparation::PurePsi, HonestPreparation::EvidenceChi}) {
        SimulationStats stats =
            run_honest(family, b, 10000, 0xb0b0ULL + runs, prep);
        total_inconsistencies += stats.inconsistencies;
        ++runs;
      }
    }
  }
  std::ostringstream detail;
  detail << total_inconsistencies << " inconsistencies across " << runs
         << " honest runs of 10000 trials";
  report_line(6, total_inconsistencies == 0, detail.str());
}

void check_mayers_rates() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_gap = 0.0;
  for (double theta : {kPi / 8, 0.55, kPi / 4}) {
    ProtocolFamily family = ProtocolFamily::minimal(theta);
    CheatPlan plan = mayers_plan(family, 0);
    SimulationStats flip = run_cheat(family, plan, 1, 100000, 0x3a7e5ULL);
    const double expected = std::pow(std::cos(2.0 * theta), 2);
    const double band =
        3.0 * std::sqrt(expected * (1.0 - expected) / 100000.0);
    ok = ok && std::abs(flip.analytic_bound - expected) < 1e-9;
    ok = ok && std::abs(flip.empirical_rate - expected) <= band;
    worst_gap = std::max(worst_gap, std::abs(flip.empirical_rate - expected));
    SimulationStats honest = run_cheat(family, plan, 0, 100000, 0x3a7e6ULL);
    ok = ok && honest.inconsistencies == 0;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::ostringstream detail;
  detail << "mayers detection within 3 sigma of cos^2(2 theta) (worst gap "
         << worst_gap << "), honest unveils clean, " << seconds << " s";
  report_line(7, ok && seconds < 60.0, detail.str());
}

void check_hk_rates() {
  bool ok = true;
  double worst_gap = 0.0;
  for (double theta : {0.1, kPi / 8, kPi / 4}) {
    ProtocolFamily family = ProtocolFamily::minimal(theta);
    CheatPlan plan = hk_plan(family);
    const double expected = (1.0 - std::sin(2.0 * theta)) / 2.0;
    const double sigma = std::sqrt(expected * (1.0 - expected) / 100000.0);
    SimulationStats s0 = run_cheat(family, plan, 0, 100000, 0x8a11ULL);
    SimulationStats s1 = run_cheat(family, plan, 1, 100000, 0x8a12ULL);
    for (const SimulationStats* s : {&s0, &s1}) {
      ok = ok && std::abs(s->analytic_bound - expected) < 1e-9;
      ok = ok && std::abs(s->empirical_rate - expected) <= 3.0 * sigma;
      worst_gap = std::max(worst_gap, std::abs(s->empirical_rate - expected));
    }
    ok = ok && std::abs(s0.empirical_rate - s1.empirical_rate) <= 4.0 * sigma;
  }
  std::ostringstream detail;
  detail << "hardy-kent detection within 3 sigma of (1 - sin 2 theta)/2 and "
            "symmetric (worst gap "
         << worst_gap << ")";
  report_line(8, ok, detail.str());
}

void check_entanglement_bound() {
  double worst_pure = 0.0;
  double worst_violation = 0.0;
  for (int grid = 0; grid <= 100; ++grid) {
    const double f = grid / 100.0;
    const double theta = std::asin(f) / 2.0;
    MeasureReport pure = report(ProtocolFamily::minimal(theta));
    worst_pure = std::max(
        worst_pure, std::abs(pure.entanglement - (1.0 - pure.bob_information)));

    MeasureReport mixed =
        report(ProtocolFamily::create(theta, {0.5, 0.5}, {0.5, 0.5}, 4, 4));
    worst_violation = std::max(
        worst_violation, (1.0 - mixed.bob_information) - mixed.entanglement);
    worst_violation =
        std::max(worst_violation, mixed.hk_information - mixed.entanglement - 1e-9);
    if (mixed.mayers_information) {
      worst_violation = std::max(
          worst_violation, *mixed.mayers_information - mixed.entanglement - 1e-9);
    }
  }
  std::ostringstream detail;
  detail << "entanglement equals 1 - bob_info for pure spectra (residual "
         << worst_pure << ") and dominates alice's information for mixed";
  report_line(9, worst_pure < 1e-9 && worst_violation <= 0.0, detail.str());
}

void check_optimality() {
  double worst_saturation = 0.0;
  for (int grid = 0; grid <= 20; ++grid) {
    const double theta = kPi / 4 * grid / 20.0;
    ProtocolFamily family = ProtocolFamily::minimal(theta);
    CanonicalStates canon = build_canonical(family);
    const double f = std::abs(std::sin(2.0 * theta));
    for (int evidence = 0; evidence < 2; ++evidence) {
      CheatPlan plan = mayers_plan(family, evidence);
      const BipartitePureState& honest_flip =
          evidence == 0 ? canon.psi1 : canon.psi0;
      worst_saturation = std::max(
          worst_saturation,
          std::abs(std::abs(overlap(
                       honest_flip,
                       plan.fake_states[static_cast<std::size_t>(1 - evidence)])) -
                   f));
    }
    CheatPlan hk = hk_plan(family);
    const double expected = std::sqrt((1.0 + f) / 2.0);
    worst_saturation = std::max(
        worst_saturation,
        std::abs(std::abs(overlap(canon.psi0, hk.fake_states[0])) - expected));
    worst_saturation = std::max(
        worst_saturation,
        std::abs(std::abs(overlap(canon.psi1, hk.fake_states[1])) - expected));
  }

  // No sampled local rotation beats the detection bound for both bits.
  ProtocolFamily family = ProtocolFamily::minimal(kPi / 8);
  CheatPlan plan = hk_plan(family);
  const double bound = (1.0 - std::sin(kPi / 4)) / 2.0;
  const std::uint64_t trials = 2000;
  const double band = 3.0 * std::sqrt(bound * (1.0 - bound) / trials);
  Rng rng(0xacc10ULL);
  int beats = 0;
  for (int k = 0; k < 200; ++k) {
    BipartitePureState rotated =
        apply_unitary_a(plan.initial_state, random_unitary(2, rng));
    const double r0 =
        run_cheat_with_state(family, rotated, 0, trials, 0xacc11ULL)
            .empirical_rate;
    const double r1 =
        run_cheat_with_state(family, rotated, 1, trials, 0xacc12ULL)
            .empirical_rate;
    if (r0 < bound - band && r1 < bound - band) ++beats;
  }
  std::ostringstream detail;
  detail << "fake overlaps saturate the bounds (residual " << worst_saturation
         << "); " << beats << "/200 random rotations beat the bound for both "
         << "bits";
  report_line(10, worst_saturation < 1e-9 && beats == 0, detail.str());
}

void check_cli_determinism(const std::string& cli) {
  const std::string command = cli +
      " simulate --strategy hk --unveil 1 --theta 0.392699081698724 "
      "--trials 50000 --seed 20001115 --format json";
  RunResult first = run_cli(command);
  RunResult second = run_cli(command);
  const bool ok = first.exit_code == 0 && second.exit_code == 0 &&
                  !first.stdout_text.empty() &&
                  first.stdout_text == second.stdout_text;
  report_line(11, ok, "repeated simulate runs are byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: qbc_acceptance <path-to-qbc-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  check_figure_curves(cli);
  check_closed_forms();
  check_orthogonal_purifications();
  check_honest_runs();
  check_mayers_rates();
  check_hk_rates();
  check_entanglement_bound();
  check_optimality();
  check_cli_determinism(cli);

  if (failures == 0) {
    std::cout << "acceptance: all 11 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return 1;
}
