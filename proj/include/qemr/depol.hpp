// Copyright 2026 The qemr Authors
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

#ifndef QEMR_DEPOL_HPP_
#define QEMR_DEPOL_HPP_

#include <cstdint>
#include <vector>

#include "qemr/circuit.hpp"
#include "qemr/mitigation.hpp"
#include "qemr/regression.hpp"

namespace qemr {

/// Closed-form setting: a global depolarizing channel of strength eps applied
/// `applications` times to a state of Hilbert dimension d, measured with an
/// observable of trace trace_o and ideal expectation ideal_expectation.
struct DepolScenario {
  double eps = 0.0;
  double d = 2.0;
  double trace_o = 0.0;
  double ideal_expectation = 0.0;
  std::uint64_t applications = 1;
};

/// (1-eps)^j <O> + (1 - (1-eps)^j) Tr[O]/d.
double noisy_expectation(const DepolScenario& scenario);

/// The affine model that inverts one channel application exactly:
/// a = 1/(1-eps), b = -eps Tr[O] / ((1-eps) d). Requires eps < 1.
RegressionModel cdr_exact_params(double eps, double trace_o, double d);

struct EcdrConditionResult {
  bool pass = false;
  double residual_a = 0.0;
  double residual_b = 0.0;
};

/// Checks whether extrapolated model parameters sum_j gamma_j (a_j, b_j)
/// equal the exact inversion parameters of the scenario's j-fold channel
/// (a* = (1-eps)^-j and the matching intercept). With one model and one
/// application this is the single-channel exactness condition; at
/// applications = 0 it measures how far the extrapolated model is from the
/// identity that noise-free data requires.
EcdrConditionResult verify_ecdr_conditions(const std::vector<double>& gammas,
                                           const std::vector<double>& a_values,
                                           const std::vector<double>& b_values,
                                           const DepolScenario& scenario,
                                           double tolerance = 1e-9);

enum class DepolMethod { cdr, ecdr };

/// Runs the full mitigation pipeline against a synthetic analytic executor
/// that applies the global channel (once for cdr, lambda-many times for
/// ecdr's noise-scaled circuits) and returns the largest per-bin deviation of
/// the mitigated distribution from the ideal one.
double end_to_end_depol_check(const Circuit& circuit, double eps,
                              DepolMethod method,
                              const MitigationOptions& options);

/// The analytic executor used by end_to_end_depol_check: evaluates the ideal
/// distribution, then mixes it with the uniform one as the global channel
/// dictates. The application count is the circuit's noise scale, detected
/// from the unitary gate count relative to `reference_gate_count`.
Executor make_global_depol_executor(double eps, std::size_t reference_gate_count);

}  // namespace qemr

#endif  // QEMR_DEPOL_HPP_
