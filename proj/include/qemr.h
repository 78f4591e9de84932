/* Copyright 2026 The qemr Authors
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

/* C interface of the qemr shared library: quantum error mitigation on a
 * self-contained noisy simulator, benchmarked with multi-layer routing
 * circuits. Handles are opaque; every function returns a status code and
 * reports details through qemr_last_error(). Strings returned through
 * `char**` out-parameters are heap-allocated and must be released with
 * qemr_string_free().
 */

#ifndef QEMR_H_
#define QEMR_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qemr_status {
  QEMR_OK = 0,
  QEMR_ERR_INVALID_ARGUMENT = 1,
  QEMR_ERR_PARSE = 2,
  QEMR_ERR_PRECONDITION = 3,
  QEMR_ERR_SINGULAR_FIT = 4,
  QEMR_ERR_CAPACITY = 5,
  QEMR_ERR_NUMERIC = 6,
  QEMR_ERR_UNSUPPORTED_GATE = 7,
  QEMR_ERR_IO = 8,
  QEMR_ERR_INTERNAL = 9
} qemr_status;

typedef struct qemr_circuit qemr_circuit;
typedef struct qemr_report qemr_report;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* qemr_version(void);

/* Name of a status code. Static storage; do not free. */
const char* qemr_status_name(qemr_status status);

/* Message of the last error on this thread, or "" if none. Static storage. */
const char* qemr_last_error(void);

void qemr_string_free(char* text);
void qemr_circuit_free(qemr_circuit* circuit);
void qemr_report_free(qemr_report* report);

/* ---- circuits -------------------------------------------------------- */

/* Parses the line-oriented circuit text format. */
qemr_status qemr_circuit_parse(const char* text, qemr_circuit** out);

/* Serializes a circuit back to text (bit-exact round trip). */
qemr_status qemr_circuit_format(const qemr_circuit* circuit, char** out);

qemr_status qemr_circuit_n_qubits(const qemr_circuit* circuit, uint32_t* out);
qemr_status qemr_circuit_unitary_gate_count(const qemr_circuit* circuit,
                                            size_t* out);

/* Rewrites onto the {Rz, SX, X, CX} basis. */
qemr_status qemr_circuit_transpile(const qemr_circuit* circuit,
                                   qemr_circuit** out);

/* Noise-scales by unitary folding. mode: 0 = whole-circuit, 1 = per-gate.
 * achieved_lambda may be NULL. */
qemr_status qemr_circuit_fold(const qemr_circuit* circuit, double target_lambda,
                              int mode, uint64_t seed, qemr_circuit** out,
                              double* achieved_lambda);

/* Snaps non-Clifford Rz angles with probability p_convert. */
qemr_status qemr_circuit_near_clifford(const qemr_circuit* circuit,
                                       double p_convert, uint64_t seed,
                                       qemr_circuit** out);

/* Builds a routing circuit with every control active. Amplitudes are
 * renormalized. */
qemr_status qemr_build_router(int layers, double alpha_re, double alpha_im,
                              double beta_re, double beta_im,
                              qemr_circuit** out);

/* ---- simulation ------------------------------------------------------ */

/* Exact measured-qubit probabilities as JSON {"bits": p, ..., "shots": 0}. */
qemr_status qemr_simulate_ideal(const qemr_circuit* circuit, char** dist_json);

/* Noisy simulation under a noise model given as JSON
 * {"p1":..., "p2":..., "readout_flip":..., "global_eps":...}.
 * shots = 0 returns analytic probabilities where capacity allows. */
qemr_status qemr_simulate_noisy(const qemr_circuit* circuit,
                                const char* noise_json, uint64_t shots,
                                uint64_t seed, char** dist_json);

/* ---- experiments ----------------------------------------------------- */

/* Runs the routing benchmark described by a config JSON document. */
qemr_status qemr_run_experiment(const char* config_json, qemr_report** out);

qemr_status qemr_report_to_json(const qemr_report* report, char** out);
qemr_status qemr_report_from_json(const char* text, qemr_report** out);
qemr_status qemr_report_load(const char* path, qemr_report** out);
qemr_status qemr_report_save(const qemr_report* report, const char* path);

/* format: 0 = aligned table, 1 = CSV. */
qemr_status qemr_report_summary(const qemr_report* report, int format,
                                char** out);

/* ---- analytic depolarizing checks ------------------------------------ */

/* Closed-form checks of the regression methods under a global depolarizing
 * channel of strength eps at the given noise scales: end-to-end residuals of
 * the cdr and ecdr pipelines on the 1-layer router plus the extrapolated
 * model parameters. Returns a JSON summary. */
qemr_status qemr_verify_depolarizing(double eps, const double* lambdas,
                                     size_t n_lambdas, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* QEMR_H_ */
