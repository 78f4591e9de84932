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

#ifndef QEMR_EXPERIMENT_HPP_
#define QEMR_EXPERIMENT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qemr/mitigation.hpp"
#include "qemr/noise.hpp"
#include "qemr/router.hpp"

namespace qemr {

enum class Method {
  unmitigated,
  zne,
  cdr,
  ecdr,
  vncdr,
  zne_plus_cdr,
  cdr_plus_zne,
};

const char* method_name(Method method);
Method method_from_name(const std::string& name);

/// Full description of a routing benchmark run. Everything stochastic derives
/// from `seed`, so a config determines its report byte for byte.
struct ExperimentConfig {
  int layers = 1;
  std::vector<Method> methods = {Method::unmitigated, Method::zne, Method::cdr,
                                 Method::ecdr};
  std::uint64_t shots = 20000;   // 0 = analytic distributions
  std::uint64_t repetitions = 0; // 0 = per-method defaults
  std::vector<double> lambdas = {1.0, 3.0, 5.0};
  std::size_t cdr_circuits = 50;
  std::size_t ecdr_circuits_per_scale = 10;
  std::size_t vncdr_circuits = 10;
  std::size_t znecdr_circuits_per_scale = 5;
  std::size_t cdrzne_circuits = 5;
  double p_convert = 0.9;
  std::string noise_preset = "bench";  // resolved into `noise` when nonempty
  NoiseModel noise;
  std::uint64_t seed = 2026;
  std::uint32_t active_controls = 4;  // 3-layer simplification
  unsigned threads = 1;
  std::uint32_t dm_max_qubits = 12;
  cdouble signal_alpha{0.5, 0.13};
  cdouble signal_beta{-0.82, -0.22};

  /// Effective repetition count: the explicit override, or the per-method
  /// default (20 for the plain methods, 3 for the concatenations, 2 for
  /// vncdr).
  std::uint64_t repetitions_for(Method method) const;
  NoiseModel resolved_noise() const;
  void validate() const;

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
};

struct MethodResult {
  std::string status = "ok";  // "ok" | "failed"
  std::string error;
  std::vector<double> fidelities;  // one per repetition
  double mean_fidelity = 0.0;
  double std_dev = 0.0;  // population standard deviation over repetitions
  std::size_t ancillary_circuits = 0;
  std::size_t executor_runs = 0;
  std::size_t simulator_runs = 0;
};

struct ExperimentReport {
  int format_version = 1;
  ExperimentConfig config;
  std::vector<std::uint32_t> active_control_set;
  std::map<std::string, MethodResult> results;  // keyed by method name

  std::string to_json() const;
  static ExperimentReport from_json(const std::string& text);
};

/// Runs every configured method: per repetition, build the router, execute
/// the three tomography circuits on the noisy executor, mitigate each basis
/// independently, post-select, reconstruct and score the signal fidelity.
/// A method that throws is recorded as failed without aborting the others.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Fixed-column CSV: method,layers,mean_fidelity,std,repetitions,
/// ancillary_circuits,status. Failed methods leave the numeric fields blank.
std::string summarize_csv(const ExperimentReport& report);

/// Aligned text table with the same content as the CSV.
std::string summarize_table(const ExperimentReport& report);

void save_report(const ExperimentReport& report, const std::string& path);
ExperimentReport load_report(const std::string& path);

}  // namespace qemr

#endif  // QEMR_EXPERIMENT_HPP_
