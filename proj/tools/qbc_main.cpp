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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbc/qbc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

using json = nlohmann::json;

// Locale-independent, 10 significant digits.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 10);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

struct FamilyHandle {
  qbc_family* ptr = nullptr;
  ~FamilyHandle() { qbc_family_destroy(ptr); }
};

int fail_config(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitConfig;
}

int make_minimal_family(double theta, FamilyHandle& out) {
  const qbc_status status = qbc_family_create_minimal(theta, &out.ptr);
  if (status != QBC_OK) return fail_config(qbc_last_error());
  return kExitOk;
}

struct SweepOptions {
  int grid_points = 101;
  std::string format = "csv";
  std::string out_path;
};

int run_sweep(const SweepOptions& opt) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path, std::ios::binary);
    if (!file) return fail_config("cannot open output path " + opt.out_path);
    os = &file;
  }

  json rows = json::array();
  std::string csv =
      "fidelity,theta,bob_info,mayers_info,hk_info,entanglement,sum_bob_hk,"
      "sum_bob_mayers\n";
  for (int k = 0; k < opt.grid_points; ++k) {
    const double f =
        static_cast<double>(k) / static_cast<double>(opt.grid_points - 1);
    const double theta = std::asin(std::min(f, 1.0)) / 2.0;
    FamilyHandle family;
    if (int rc = make_minimal_family(theta, family); rc != kExitOk) return rc;
    qbc_report report{};
    if (qbc_family_report(family.ptr, &report) != QBC_OK) {
      return fail_config(qbc_last_error());
    }
    const double sum_bob_hk = report.bob_information + report.hk_information;
    const bool mayers = report.mayers_applicable != 0;
    const double sum_bob_mayers =
        report.bob_information + report.mayers_information;

    csv += format_double(f) + "," + format_double(theta) + "," +
           format_double(report.bob_information) + "," +
           (mayers ? format_double(report.mayers_information) : "") + "," +
           format_double(report.hk_information) + "," +
           format_double(report.entanglement) + "," +
           format_double(sum_bob_hk) + "," +
           (mayers ? format_double(sum_bob_mayers) : "") + "\n";

    json row = {
        {"fidelity", f},
        {"theta", theta},
        {"bob_info", report.bob_information},
        {"mayers_info", mayers ? json(report.mayers_information) : json()},
        {"hk_info", report.hk_information},
        {"entanglement", report.entanglement},
        {"sum_bob_hk", sum_bob_hk},
        {"sum_bob_mayers", mayers ? json(sum_bob_mayers) : json()},
    };
    rows.push_back(std::move(row));
  }

  if (opt.format == "csv") {
    *os << csv;
  } else {
    *os << rows.dump(2) << "\n";
  }
  if (os == &file && !file.good()) {
    return fail_config("failed writing output path " + opt.out_path);
  }
  return kExitOk;
}

struct SimulateOptions {
  std::string strategy = "honest";
  int evidence_bit = 0;
  int unveil = 0;
  std::optional<double> theta;
  std::optional<double> fidelity;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  std::string format = "json";
};

int run_simulate(const SimulateOptions& opt) {
  if (opt.theta.has_value() == opt.fidelity.has_value()) {
    return fail_config("exactly one of --theta or --fidelity must be given");
  }
  double theta;
  if (opt.theta) {
    theta = *opt.theta;
  } else {
    if (*opt.fidelity < 0.0 || *opt.fidelity > 1.0) {
      return fail_config("--fidelity must lie in [0, 1]");
    }
    theta = std::asin(*opt.fidelity) / 2.0;
  }

  FamilyHandle family;
  if (int rc = make_minimal_family(theta, family); rc != kExitOk) return rc;

  qbc_sim_request request{};
  if (opt.strategy == "honest") {
    request.strategy = QBC_STRATEGY_HONEST;
  } else if (opt.strategy == "mayers") {
    request.strategy = QBC_STRATEGY_MAYERS;
  } else if (opt.strategy == "hk") {
    request.strategy = QBC_STRATEGY_HARDY_KENT;
  } else {
    return fail_config("unknown strategy " + opt.strategy);
  }
  request.evidence_bit = opt.evidence_bit;
  request.unveil_bit = opt.unveil;
  request.trials = opt.trials;
  request.seed = opt.seed;

  qbc_sim_stats stats{};
  if (qbc_simulate(family.ptr, &request, &stats) != QBC_OK) {
    return fail_config(qbc_last_error());
  }

  const bool passed = stats.within_band != 0;
  if (opt.format == "csv") {
    std::cout << "trials,empirical_rate,analytic_bound,three_sigma,passed,seed\n"
              << stats.trials << "," << format_double(stats.empirical_rate)
              << "," << format_double(stats.analytic_bound) << ","
              << format_double(stats.binomial_3sigma) << ","
              << (passed ? "true" : "false") << "," << stats.seed << "\n";
  } else {
    json doc = {
        {"trials", stats.trials},
        {"empirical_rate", stats.empirical_rate},
        {"analytic_bound", stats.analytic_bound},
        {"three_sigma", stats.binomial_3sigma},
        {"passed", passed},
        {"seed", stats.seed},
    };
    std::cout << doc.dump(2) << "\n";
  }
  return passed ? kExitOk : kExitCheckFailed;
}

int run_verify(std::uint64_t seed) {
  qbc_verify_run* run = nullptr;
  if (qbc_verify_create(seed, &run) != QBC_OK) {
    return fail_config(qbc_last_error());
  }
  std::unique_ptr<qbc_verify_run, void (*)(qbc_verify_run*)> guard(
      run, qbc_verify_destroy);
  const size_t count = qbc_verify_count(run);
  for (size_t i = 0; i < count; ++i) {
    std::cout << (qbc_verify_passed(run, i) ? "PASS " : "FAIL ")
              << qbc_verify_name(run, i)
              << " residual=" << format_double(qbc_verify_residual(run, i))
              << " tolerance=" << format_double(qbc_verify_tolerance(run, i))
              << "\n";
  }
  const bool all = qbc_verify_all_passed(run) != 0;
  std::cout << (all ? "all checks passed" : "some checks FAILED") << " ("
            << count << " checks, seed " << seed << ")\n";
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum bit-commitment trade-off simulator"};
  app.require_subcommand(1);

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Tabulate the cheating measures over a fidelity grid");
  sweep->add_option("--grid-points", sweep_opt.grid_points, "Grid size")
      ->check(CLI::Range(2, 1000000));
  sweep->add_option("--format", sweep_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sweep_opt.out_path, "Output path (default stdout)");

  SimulateOptions sim_opt;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo run of the opening-phase consistency test");
  simulate->add_option("--strategy", sim_opt.strategy, "honest, mayers or hk")
      ->check(CLI::IsMember({"honest", "mayers", "hk"}));
  simulate->add_option("--evidence-bit", sim_opt.evidence_bit,
                       "Mayers: bit whose marginal was honestly sent")
      ->check(CLI::IsMember({0, 1}));
  simulate->add_option("--unveil", sim_opt.unveil, "Bit Alice unveils")
      ->check(CLI::IsMember({0, 1}));
  auto* theta_opt =
      simulate->add_option("--theta", sim_opt.theta, "Family angle in [0, pi/4]");
  simulate->add_option("--fidelity", sim_opt.fidelity, "Marginal fidelity in [0, 1]")
      ->excludes(theta_opt);
  simulate->add_option("--trials", sim_opt.trials, "Number of protocol runs")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_opt.seed, "RNG seed");
  simulate->add_option("--format", sim_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::uint64_t verify_seed = 42;
  CLI::App* verify =
      app.add_subcommand("verify", "Run every module's invariant suite");
  verify->add_option("--seed", verify_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (sweep->parsed()) return run_sweep(sweep_opt);
  if (simulate->parsed()) return run_simulate(sim_opt);
  if (verify->parsed()) return run_verify(verify_seed);
  return kExitConfig;
}
