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

#ifndef QEMR_MITIGATION_HPP_
#define QEMR_MITIGATION_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qemr/distribution.hpp"
#include "qemr/regression.hpp"
#include "qemr/simulate.hpp"
#include "qemr/transpile.hpp"

namespace qemr {

/// Shared knobs for the mitigation strategies. `circuits` is the number of
/// near-Clifford companions built where a strategy needs them (per noise
/// scale for the extrapolated variants). shots == 0 runs every backend
/// analytically.
struct MitigationOptions {
  std::vector<double> lambdas = {1.0, 3.0, 5.0};
  std::size_t circuits = 10;
  double p_convert = 0.9;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  FoldMode fold_mode = FoldMode::circuit;
};

/// Everything a mitigation run produced, for auditing and persistence. Only
/// the fields a given method fills are serialized with content; the rest stay
/// at defaults.
struct MitigationReport {
  std::string method;
  std::vector<double> lambdas;

  MeasurementDistribution raw;        // executor output of the original circuit
  MeasurementDistribution mitigated;  // clip-renormalized corrected distribution

  std::vector<MeasurementDistribution> per_lambda_distributions;
  std::vector<RegressionModel> per_lambda_models;
  QuadraticModel slope_fit;      // quadratic over per-scale slopes
  QuadraticModel intercept_fit;  // quadratic over per-scale intercepts
  double extrapolated_a = 1.0;
  double extrapolated_b = 0.0;
  std::vector<double> gammas;   // implied extrapolation weights (3 scales only)
  std::vector<double> weights;  // fitted combination weights
  RegressionModel model;        // single linear model where one is used

  std::size_t ancillary_circuits = 0;
  std::size_t executor_runs = 0;
  std::size_t simulator_runs = 0;

  std::string to_json() const;
  static MitigationReport from_json(const std::string& text);
};

/// Clamp per-bin values into [0, 1] and renormalize; an all-zero vector
/// becomes uniform. Non-finite input raises a numeric error.
MeasurementDistribution clip_renormalize(
    const std::map<std::string, double>& values, std::uint64_t shots);

/// Zero-noise extrapolation applied to measurement results: run the circuit
/// folded to every noise scale, fit a per-bin quadratic in the scale and read
/// it out at zero.
MitigationReport zne(const Circuit& circuit, const Executor& executor,
                     const MitigationOptions& options);

/// Regression on near-Clifford companions: pools (noisy, noiseless)
/// per-bin probability pairs from `circuits` snapped copies into one affine
/// model and applies it to the circuit's own noisy distribution.
MitigationReport cdr(const Circuit& circuit, const Executor& executor,
                     const Executor& simulator, const MitigationOptions& options);

/// Extrapolated regression: one affine model per noise scale (each fitted as
/// in cdr on companions of the folded circuit), a quadratic extrapolation of
/// the model parameters to scale zero, and a single application of the
/// extrapolated model to the original circuit's distribution.
MitigationReport ecdr(const Circuit& circuit, const Executor& executor,
                      const Executor& simulator, const MitigationOptions& options);

/// Variable-noise regression: fits combination weights over noise scales on
/// expectation values of near-Clifford data, then applies the weights to the
/// per-bin results of the noise-scaled original circuit.
MitigationReport vncdr(const Circuit& circuit, const Executor& executor,
                       const Executor& simulator, const Observable& observable,
                       const MitigationOptions& options);

/// cdr on every noise-scaled circuit, then per-bin quadratic extrapolation of
/// the mitigated values. A single noise scale degenerates to plain cdr.
MitigationReport zne_plus_cdr(const Circuit& circuit, const Executor& executor,
                              const Executor& simulator,
                              const MitigationOptions& options);

/// zne on every near-Clifford companion, an affine fit from those mitigated
/// results to the noiseless ones, applied to the zne-mitigated original.
MitigationReport cdr_plus_zne(const Circuit& circuit, const Executor& executor,
                              const Executor& simulator,
                              const MitigationOptions& options);

}  // namespace qemr

#endif  // QEMR_MITIGATION_HPP_
