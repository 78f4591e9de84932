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

#include "qemr/depol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qemr/simulate.hpp"
#include "qemr/statevector.hpp"

namespace qemr {

double noisy_expectation(const DepolScenario& scenario) {
  require(scenario.eps >= 0.0 && scenario.eps <= 1.0, errc::invalid_argument,
          "eps must lie in [0, 1]");
  const double keep =
      std::pow(1.0 - scenario.eps, static_cast<double>(scenario.applications));
  return keep * scenario.ideal_expectation +
         (1.0 - keep) * scenario.trace_o / scenario.d;
}

RegressionModel cdr_exact_params(double eps, double trace_o, double d) {
  require(eps < 1.0, errc::singular_fit,
          "a fully depolarizing channel cannot be inverted");
  require(eps >= 0.0, errc::invalid_argument, "eps must be nonnegative");
  RegressionModel model;
  model.a = 1.0 / (1.0 - eps);
  model.b = -eps * trace_o / ((1.0 - eps) * d);
  model.residual_sum = 0.0;
  model.n_points = 0;
  return model;
}

EcdrConditionResult verify_ecdr_conditions(const std::vector<double>& gammas,
                                           const std::vector<double>& a_values,
                                           const std::vector<double>& b_values,
                                           const DepolScenario& scenario,
                                           double tolerance) {
  require(gammas.size() == a_values.size() && gammas.size() == b_values.size(),
          errc::invalid_argument, "weight and parameter lists differ in length");
  require(!gammas.empty(), errc::invalid_argument, "empty parameter lists");

  double a_hat = 0.0, b_hat = 0.0;
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    a_hat += gammas[j] * a_values[j];
    b_hat += gammas[j] * b_values[j];
  }

  const double keep =
      std::pow(1.0 - scenario.eps, static_cast<double>(scenario.applications));
  require(keep > 0.0, errc::singular_fit,
          "a fully depolarizing channel cannot be inverted");
  const double a_exact = 1.0 / keep;
  const double b_exact = -(1.0 - keep) / keep * scenario.trace_o / scenario.d;

  EcdrConditionResult result;
  result.residual_a = std::abs(a_hat - a_exact);
  result.residual_b = std::abs(b_hat - b_exact);
  result.pass =
      result.residual_a <= tolerance && result.residual_b <= tolerance;
  return result;
}

Executor make_global_depol_executor(double eps,
                                    std::size_t reference_gate_count) {
  require(eps >= 0.0 && eps <= 1.0, errc::invalid_argument,
          "eps must lie in [0, 1]");
  require(reference_gate_count > 0, errc::invalid_argument,
          "reference gate count must be positive");
  return [eps, reference_gate_count](const Circuit& circuit, std::uint64_t shots,
                                     std::uint64_t seed) {
    MeasurementDistribution ideal = simulate_ideal(circuit);
    // The noise scale of a folded circuit shows in its gate count; the
    // channel is applied that many times.
    const double ratio = static_cast<double>(circuit.unitary_gate_count()) /
                         static_cast<double>(reference_gate_count);
    const auto applications =
        static_cast<std::uint64_t>(std::max<long long>(1, std::llround(ratio)));
    const double keep = std::pow(1.0 - eps, static_cast<double>(applications));
    const std::size_t n_bits = circuit.measured_qubits().size();
    const double uniform = 1.0 / static_cast<double>(std::size_t{1} << n_bits);
    MeasurementDistribution out;
    out.shots = 0;
    // The channel mixes in the uniform distribution, so every bin of the
    // outcome space appears.
    for (std::size_t i = 0; i < (std::size_t{1} << n_bits); ++i) {
      const std::string key = bits_to_key(i, n_bits);
      out.probabilities[key] = keep * ideal.at(key) + (1.0 - keep) * uniform;
    }
    if (shots > 0) out = sample(out, shots, seed);
    return out;
  };
}

double end_to_end_depol_check(const Circuit& circuit, double eps,
                              DepolMethod method,
                              const MitigationOptions& options) {
  const Circuit base = is_basis_level(circuit) ? circuit : transpile(circuit);
  const MeasurementDistribution ideal = simulate_ideal(base);
  const Executor executor =
      make_global_depol_executor(eps, base.unitary_gate_count());
  const Executor simulator = make_ideal_executor();

  MitigationOptions analytic = options;
  analytic.shots = 0;
  const MitigationReport report =
      method == DepolMethod::cdr ? cdr(base, executor, simulator, analytic)
                                 : ecdr(base, executor, simulator, analytic);

  double residual = 0.0;
  std::set<std::string> keys;
  for (const auto& [key, p] : ideal.probabilities) keys.insert(key);
  for (const auto& [key, p] : report.mitigated.probabilities) keys.insert(key);
  for (const std::string& key : keys) {
    residual =
        std::max(residual, std::abs(report.mitigated.at(key) - ideal.at(key)));
  }
  return residual;
}

}  // namespace qemr
