/* Copyright 2026 The qbc-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the bit-commitment simulation library. All state lives
 * behind opaque handles; every function returns a status code and writes
 * results through out parameters. On failure qbc_last_error() carries a
 * human-readable message for the calling thread. */

#ifndef QBC_QBC_H_
#define QBC_QBC_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qbc_status {
  QBC_OK = 0,
  QBC_ERROR_INVALID_ARGUMENT = 1,
  QBC_ERROR_NUMERICAL = 2,
  QBC_ERROR_UNSUPPORTED = 3
} qbc_status;

/* Message describing the most recent failure on this thread. */
const char* qbc_last_error(void);
const char* qbc_status_name(qbc_status status);

/* ---- Protocol families -------------------------------------------------- */

typedef struct qbc_family qbc_family;

/* Two-qubit model with pure block spectra; theta in [0, pi/4]. */
qbc_status qbc_family_create_minimal(double theta, qbc_family** out);

/* General family: block spectra (probability vectors) and dimensions.
 * Requires dim_b >= n0 + n1 and dim_a >= 2. */
qbc_status qbc_family_create(double theta, const double* spectrum0, size_t n0,
                             const double* spectrum1, size_t n1, size_t dim_a,
                             size_t dim_b, qbc_family** out);

void qbc_family_destroy(qbc_family* family);

/* ---- Information-theoretic measures ------------------------------------- */

typedef struct qbc_report {
  double fidelity;
  double distinguishability;
  double bob_error;
  double bob_information;
  double mayers_error;
  int mayers_applicable; /* 0: mayers_information is meaningless */
  double mayers_information;
  double hk_error;
  double hk_information;
  double entanglement;
  double info_commit;
  double info_open;
} qbc_report;

qbc_status qbc_family_report(const qbc_family* family, qbc_report* out);

/* ---- Monte Carlo protocol runs ------------------------------------------ */

typedef enum qbc_strategy {
  QBC_STRATEGY_HONEST = 0,
  QBC_STRATEGY_MAYERS = 1,
  QBC_STRATEGY_HARDY_KENT = 2
} qbc_strategy;

typedef struct qbc_sim_request {
  qbc_strategy strategy;
  int evidence_bit; /* Mayers only: which marginal was honestly sent */
  int unveil_bit;
  uint64_t trials;
  uint64_t seed;
} qbc_sim_request;

typedef struct qbc_sim_stats {
  uint64_t trials;
  uint64_t inconsistencies;
  double empirical_rate;
  double analytic_bound;
  double binomial_3sigma;
  int within_band;
  uint64_t seed;
} qbc_sim_stats;

/* Runs the opening-phase consistency test `trials` times. Requires the
 * minimal family. Honest runs commit and unveil the same bit. */
qbc_status qbc_simulate(const qbc_family* family,
                        const qbc_sim_request* request, qbc_sim_stats* out);

/* ---- Invariant verification --------------------------------------------- */

typedef struct qbc_verify_run qbc_verify_run;

qbc_status qbc_verify_create(uint64_t seed, qbc_verify_run** out);
void qbc_verify_destroy(qbc_verify_run* run);

size_t qbc_verify_count(const qbc_verify_run* run);
const char* qbc_verify_name(const qbc_verify_run* run, size_t index);
double qbc_verify_residual(const qbc_verify_run* run, size_t index);
double qbc_verify_tolerance(const qbc_verify_run* run, size_t index);
int qbc_verify_passed(const qbc_verify_run* run, size_t index);
int qbc_verify_all_passed(const qbc_verify_run* run);

#ifdef __cplusplus
}
#endif

#endif /* QBC_QBC_H_ */
