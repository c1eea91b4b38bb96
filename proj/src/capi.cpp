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

#include "qbc/qbc.h"

#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "measures.hpp"
#include "protocol.hpp"
#include "states.hpp"
#include "strategies.hpp"
#include "verify.hpp"

struct qbc_family {
  qbc::ProtocolFamily family;
};

struct qbc_verify_run {
  std::vector<qbc::VerifyCheck> checks;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* message) { g_last_error = message; }

template <typename Fn>
qbc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return QBC_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QBC_ERROR_NUMERICAL;
  }
}

}  // namespace

extern "C" {

const char* qbc_last_error(void) { return g_last_error.c_str(); }

const char* qbc_status_name(qbc_status status) {
  switch (status) {
    case QBC_OK:
      return "ok";
    case QBC_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case QBC_ERROR_NUMERICAL:
      return "numerical failure";
    case QBC_ERROR_UNSUPPORTED:
      return "unsupported";
  }
  return "unknown";
}

qbc_status qbc_family_create_minimal(double theta, qbc_family** out) {
  return guarded([&]() {
    if (out == nullptr) {
      throw std::invalid_argument("qbc_family_create_minimal: out is null");
    }
    *out = new qbc_family{qbc::ProtocolFamily::minimal(theta)};
    return QBC_OK;
  });
}

qbc_status qbc_family_create(double theta, const double* spectrum0, size_t n0,
                             const double* spectrum1, size_t n1, size_t dim_a,
                             size_t dim_b, qbc_family** out) {
  return guarded([&]() {
    if (out == nullptr || spectrum0 == nullptr || spectrum1 == nullptr) {
      throw std::invalid_argument("qbc_family_create: null pointer argument");
    }
    *out = new qbc_family{qbc::ProtocolFamily::create(
        theta, std::vector<double>(spectrum0, spectrum0 + n0),
        std::vector<double>(spectrum1, spectrum1 + n1),
        static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_b))};
    return QBC_OK;
  });
}

void qbc_family_destroy(qbc_family* family) { delete family; }

qbc_status qbc_family_report(const qbc_family* family, qbc_report* out) {
  return guarded([&]() {
    if (family == nullptr || out == nullptr) {
      throw std::invalid_argument("qbc_family_report: null pointer argument");
    }
    const qbc::MeasureReport r = qbc::report(family->family);
    out->fidelity = r.fidelity;
    out->distinguishability = r.distinguishability;
    out->bob_error = r.bob_error;
    out->bob_information = r.bob_information;
    out->mayers_error = r.mayers_error;
    out->mayers_applicable = r.mayers_information.has_value() ? 1 : 0;
    out->mayers_information = r.mayers_information.value_or(0.0);
    out->hk_error = r.hk_error;
    out->hk_information = r.hk_information;
    out->entanglement = r.entanglement;
    out->info_commit = r.info_commit;
    out->info_open = r.info_open;
    return QBC_OK;
  });
}

qbc_status qbc_simulate(const qbc_family* family,
                        const qbc_sim_request* request, qbc_sim_stats* out) {
  return guarded([&]() {
    if (family == nullptr || request == nullptr || out == nullptr) {
      throw std::invalid_argument("qbc_simulate: null pointer argument");
    }
    if (request->unveil_bit != 0 && request->unveil_bit != 1) {
      throw std::invalid_argument("qbc_simulate: unveil bit must be 0 or 1");
    }
    qbc::SimulationStats stats;
    switch (request->strategy) {
      case QBC_STRATEGY_HONEST:
        stats = qbc::run_honest(family->family, request->unveil_bit,
                                request->trials, request->seed);
        break;
      case QBC_STRATEGY_MAYERS: {
        qbc::CheatPlan plan =
            qbc::mayers_plan(family->family, request->evidence_bit);
        stats = qbc::run_cheat(family->family, plan, request->unveil_bit,
                               request->trials, request->seed);
        break;
      }
      case QBC_STRATEGY_HARDY_KENT: {
        qbc::CheatPlan plan = qbc::hk_plan(family->family);
        stats = qbc::run_cheat(family->family, plan, request->unveil_bit,
                               request->trials, request->seed);
        break;
      }
      default:
        throw std::invalid_argument("qbc_simulate: unknown strategy");
    }
    out->trials = stats.trials;
    out->inconsistencies = stats.inconsistencies;
    out->empirical_rate = stats.empirical_rate;
    out->analytic_bound = stats.analytic_bound;
    out->binomial_3sigma = stats.binomial_3sigma;
    out->within_band = stats.within_band ? 1 : 0;
    out->seed = stats.seed;
    return QBC_OK;
  });
}

qbc_status qbc_verify_create(uint64_t seed, qbc_verify_run** out) {
  return guarded([&]() {
    if (out == nullptr) {
      throw std::invalid_argument("qbc_verify_create: out is null");
    }
    *out = new qbc_verify_run{qbc::run_verification(seed)};
    return QBC_OK;
  });
}

void qbc_verify_destroy(qbc_verify_run* run) { delete run; }

size_t qbc_verify_count(const qbc_verify_run* run) {
  return run == nullptr ? 0 : run->checks.size();
}

const char* qbc_verify_name(const qbc_verify_run* run, size_t index) {
  if (run == nullptr || index >= run->checks.size()) return nullptr;
  return run->checks[index].name.c_str();
}

double qbc_verify_residual(const qbc_verify_run* run, size_t index) {
  if (run == nullptr || index >= run->checks.size()) return -1.0;
  return run->checks[index].residual;
}

double qbc_verify_tolerance(const qbc_verify_run* run, size_t index) {
  if (run == nullptr || index >= run->checks.size()) return -1.0;
  return run->checks[index].tolerance;
}

int qbc_verify_passed(const qbc_verify_run* run, size_t index) {
  if (run == nullptr || index >= run->checks.size()) return 0;
  return run->checks[index].passed ? 1 : 0;
}

int qbc_verify_all_passed(const qbc_verify_run* run) {
  if (run == nullptr) return 0;
  for (const auto& check : run->checks) {
    if (!check.passed) return 0;
  }
  return 1;
}

}  // extern "C"
