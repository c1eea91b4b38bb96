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

// Black-box checks of the command-line interface: exit codes, output
// formats, and determinism. argv[1] is the path to the binary.

#include <array>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& command) {
  RunResult result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer{};
  size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.stdout_text.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

int failures = 0;

void expect(bool ok, const std::string& what) {
  std::cout << (ok ? "ok" : "FAIL") << " - " << what << "\n";
  if (!ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: qbc_cli_checks <path-to-qbc>\n";
    return 2;
  }
  const std::string cli = argv[1];

  // Config errors exit with 2.
  expect(run(cli + " nonsense").exit_code == 2, "unknown subcommand exits 2");
  expect(run(cli + " simulate --strategy hk --trials 10 --seed 1").exit_code == 2,
         "missing theta/fidelity exits 2");
  expect(run(cli + " simulate --strategy hk --theta 0.1 --fidelity 0.5").exit_code == 2,
         "theta and fidelity together exit 2");
  expect(run(cli + " simulate --strategy hk --theta 1.2 --trials 10 --seed 1").exit_code == 2,
         "theta outside [0, pi/4] exits 2");
  expect(run(cli + " sweep --grid-points 1").exit_code == 2,
         "grid of one point exits 2");
  expect(run(cli + " sweep --grid-points 5 --out /nonexistent/dir/x.csv").exit_code == 2,
         "unwritable output path exits 2");

  // CSV header is pinned.
  RunResult sweep = run(cli + " sweep --grid-points 5 --format csv");
  expect(sweep.exit_code == 0, "sweep exits 0");
  expect(sweep.stdout_text.rfind(
             "fidelity,theta,bob_info,mayers_info,hk_info,entanglement,"
             "sum_bob_hk,sum_bob_mayers\n",
             0) == 0,
         "sweep csv header is exact");
  expect(sweep.stdout_text.find("\r") == std::string::npos,
         "line feed endings only");
  {
    std::istringstream lines(sweep.stdout_text);
    std::string line;
    int rows = -1;  // header
    bool low_f_empty_mayers = false;
    while (std::getline(lines, line)) {
      if (rows == 0) {
        // First data row is F = 0: mayers fields must be empty.
        low_f_empty_mayers = line.find(",,") != std::string::npos &&
                             line.back() == ',';
      }
      ++rows;
    }
    expect(rows == 5, "sweep emits one row per grid point");
    expect(low_f_empty_mayers, "mayers columns empty below the threshold");
  }

  // JSON round-trips.
  RunResult json_sweep = run(cli + " sweep --grid-points 5 --format json");
  expect(json_sweep.exit_code == 0, "json sweep exits 0");
  {
    nlohmann::json parsed = nlohmann::json::parse(json_sweep.stdout_text);
    expect(parsed.is_array() && parsed.size() == 5, "json sweep is an array");
    nlohmann::json reparsed = nlohmann::json::parse(parsed.dump());
    expect(parsed == reparsed, "json sweep round-trips");
    expect(parsed[0]["mayers_info"].is_null(), "json null for inapplicable");
    expect(parsed[4]["mayers_info"].is_number(), "json number when applicable");
  }

  // Simulation output and determinism.
  const std::string sim_cmd = cli +
      " simulate --strategy mayers --evidence-bit 0 --unveil 1 --theta "
      "0.392699081698724 --trials 20000 --seed 42 --format json";
  RunResult sim1 = run(sim_cmd);
  RunResult sim2 = run(sim_cmd);
  expect(sim1.exit_code == 0, "simulate exits 0 when within band");
  expect(sim1.stdout_text == sim2.stdout_text,
         "repeated simulate output is byte-identical");
  {
    nlohmann::json parsed = nlohmann::json::parse(sim1.stdout_text);
    expect(parsed["trials"] == 20000, "simulate json carries trials");
    expect(parsed["passed"] == true, "simulate json carries pass flag");
    expect(parsed["seed"] == 42, "simulate json carries seed");
  }

  RunResult sim_csv = run(cli +
      " simulate --strategy honest --unveil 0 --theta 0.2 --trials 1000 "
      "--seed 5 --format csv");
  expect(sim_csv.exit_code == 0, "honest simulate exits 0");
  expect(sim_csv.stdout_text.rfind(
             "trials,empirical_rate,analytic_bound,three_sigma,passed,seed\n",
             0) == 0,
         "simulate csv header is exact");

  // Verify runs clean and is deterministic.
  RunResult verify1 = run(cli + " verify --seed 11");
  RunResult verify2 = run(cli + " verify --seed 11");
  expect(verify1.exit_code == 0, "verify exits 0");
  expect(verify1.stdout_text == verify2.stdout_text,
         "verify output deterministic for a fixed seed");
  expect(verify1.stdout_text.find("FAIL") == std::string::npos,
         "verify reports no failures");

  std::cout << (failures == 0 ? "all cli checks passed\n"
                              : "cli checks FAILED\n");
  return failures == 0 ? 0 : 1;
}
