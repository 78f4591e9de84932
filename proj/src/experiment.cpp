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

#include "qemr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qemr/rng.hpp"
#include "qemr/transpile.hpp"

namespace qemr {

using json = nlohmann::json;

namespace {

enum : std::uint64_t {
  kTagActives = 0xac,
  kTagMethod = 0xe0,
  kTagExec = 0xe1,
};

constexpr Method kAllMethods[] = {
    Method::unmitigated,  Method::zne,          Method::cdr,  Method::ecdr,
    Method::vncdr,        Method::zne_plus_cdr, Method::cdr_plus_zne,
};

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::unmitigated: return "unmitigated";
    case Method::zne: return "zne";
    case Method::cdr: return "cdr";
    case Method::ecdr: return "ecdr";
    case Method::vncdr: return "vncdr";
    case Method::zne_plus_cdr: return "zne+cdr";
    case Method::cdr_plus_zne: return "cdr+zne";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  for (Method m : kAllMethods) {
    if (name == method_name(m)) return m;
  }
  fail(errc::parse, "unknown method '" + name + "'");
}

std::uint64_t ExperimentConfig::repetitions_for(Method method) const {
  if (repetitions > 0) return repetitions;
  switch (method) {
    case Method::unmitigated:
    case Method::zne:
    case Method::cdr:
    case Method::ecdr:
      return 20;
    case Method::zne_plus_cdr:
    case Method::cdr_plus_zne:
      return 3;
    case Method::vncdr:
      return 2;
  }
  return 1;
}

NoiseModel ExperimentConfig::resolved_noise() const {
  if (!noise_preset.empty()) return NoiseModel::preset(noise_preset);
  NoiseModel model = noise;
  model.validate();
  return model;
}

void ExperimentConfig::validate() const {
  require(layers >= 1 && layers <= 3, errc::invalid_argument,
          "layers must be 1, 2 or 3");
  require(!methods.empty(), errc::invalid_argument, "no methods configured");
  require(p_convert >= 0.0 && p_convert <= 1.0, errc::invalid_argument,
          "p_convert must lie in [0, 1]");
  resolved_noise();
  if (layers == 3) {
    require(active_controls >= 1 && active_controls <= 7, errc::invalid_argument,
            "3-layer runs need between 1 and 7 active controls");
  }
}

std::string ExperimentConfig::to_json() const {
  json obj;
  obj["layers"] = layers;
  std::vector<std::string> names;
  names.reserve(methods.size());
  for (Method m : methods) names.emplace_back(method_name(m));
  obj["methods"] = names;
  obj["shots"] = shots;
  obj["repetitions"] = repetitions;
  obj["lambdas"] = lambdas;
  obj["cdr_circuits"] = cdr_circuits;
  obj["ecdr_circuits_per_scale"] = ecdr_circuits_per_scale;
  obj["vncdr_circuits"] = vncdr_circuits;
  obj["znecdr_circuits_per_scale"] = znecdr_circuits_per_scale;
  obj["cdrzne_circuits"] = cdrzne_circuits;
  obj["p_convert"] = p_convert;
  obj["noise_preset"] = noise_preset;
  obj["noise"] = json::parse(resolved_noise().to_json());
  obj["seed"] = seed;
  obj["active_controls"] = active_controls;
  obj["threads"] = threads;
  obj["dm_max_qubits"] = dm_max_qubits;
  obj["signal"] = {signal_alpha.real(), signal_alpha.imag(), signal_beta.real(),
                   signal_beta.imag()};
  return obj.dump();
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("bad config JSON: ") + e.what());
  }
  ExperimentConfig config;
  config.layers = obj.value("layers", 1);
  if (obj.contains("methods")) {
    config.methods.clear();
    for (const auto& name : obj["methods"]) {
      config.methods.push_back(method_from_name(name.get<std::string>()));
    }
  }
  config.shots = obj.value("shots", std::uint64_t{20000});
  config.repetitions = obj.value("repetitions", std::uint64_t{0});
  config.lambdas = obj.value("lambdas", std::vector<double>{1.0, 3.0, 5.0});
  config.cdr_circuits = obj.value("cdr_circuits", std::size_t{50});
  config.ecdr_circuits_per_scale =
      obj.value("ecdr_circuits_per_scale", std::size_t{10});
  config.vncdr_circuits = obj.value("vncdr_circuits", std::size_t{10});
  config.znecdr_circuits_per_scale =
      obj.value("znecdr_circuits_per_scale", std::size_t{5});
  config.cdrzne_circuits = obj.value("cdrzne_circuits", std::size_t{5});
  config.p_convert = obj.value("p_convert", 0.9);
  config.noise_preset = obj.value("noise_preset", std::string{});
  if (obj.contains("noise")) {
    config.noise = NoiseModel::from_json(obj["noise"].dump());
  }
  config.seed = obj.value("seed", std::uint64_t{2026});
  config.active_controls = obj.value("active_controls", std::uint32_t{4});
  config.threads = obj.value("threads", 1u);
  config.dm_max_qubits = obj.value("dm_max_qubits", std::uint32_t{12});
  if (obj.contains("signal")) {
    const auto& s = obj["signal"];
    require(s.is_array() && s.size() == 4, errc::parse,
            "signal must be [are, aim, bre, bim]");
    config.signal_alpha = cdouble(s[0].get<double>(), s[1].get<double>());
    config.signal_beta = cdouble(s[2].get<double>(), s[3].get<double>());
  }
  config.validate();
  return config;
}

namespace {

json method_result_to_json(const MethodResult& r) {
  json obj;
  obj["status"] = r.status;
  obj["error"] = r.error;
  obj["fidelities"] = r.fidelities;
  obj["mean_fidelity"] = r.mean_fidelity;
  obj["std"] = r.std_dev;
  obj["ancillary_circuits"] = r.ancillary_circuits;
  obj["executor_runs"] = r.executor_runs;
  obj["simulator_runs"] = r.simulator_runs;
  return obj;
}

MethodResult method_result_from_json(const json& obj) {
  MethodResult r;
  r.status = obj.value("status", std::string{"ok"});
  r.error = obj.value("error", std::string{});
  r.fidelities = obj.value("fidelities", std::vector<double>{});
  r.mean_fidelity = obj.value("mean_fidelity", 0.0);
  r.std_dev = obj.value("std", 0.0);
  r.ancillary_circuits = obj.value("ancillary_circuits", std::size_t{0});
  r.executor_runs = obj.value("executor_runs", std::size_t{0});
  r.simulator_runs = obj.value("simulator_runs", std::size_t{0});
  return r;
}

}  // namespace

std::string ExperimentReport::to_json() const {
  json obj;
  obj["format_version"] = format_version;
  obj["config"] = json::parse(config.to_json());
  obj["active_control_set"] = active_control_set;
  json res = json::object();
  for (const auto& [name, result] : results) {
    res[name] = method_result_to_json(result);
  }
  obj["results"] = res;
  return obj.dump(2);
}

ExperimentReport ExperimentReport::from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    // Count lines up to the failing byte for a useful pointer.
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
      if (text[i] == '\n') ++line;
    }
    fail(errc::parse, "report parse error near line " + std::to_string(line) +
                          ": " + e.what());
  }
  const int version = obj.value("format_version", -1);
  require(version == 1, errc::parse,
          "unsupported report format_version " + std::to_string(version));
  ExperimentReport report;
  report.format_version = version;
  report.config = ExperimentConfig::from_json(obj.at("config").dump());
  report.active_control_set =
      obj.value("active_control_set", std::vector<std::uint32_t>{});
  for (const auto& [name, value] : obj.at("results").items()) {
    report.results[name] = method_result_from_json(value);
  }
  return report;
}

namespace {

struct BasisRun {
  MeasurementDistribution dist;
  std::size_t ancillary = 0;
  std::size_t executor_runs = 0;
  std::size_t simulator_runs = 0;
};

BasisRun run_method_on_circuit(Method method, const Circuit& circuit,
                               const Executor& executor, const Executor& simulator,
                               const ExperimentConfig& config,
                               std::uint64_t seed) {
  MitigationOptions options;
  options.lambdas = config.lambdas;
  options.p_convert = config.p_convert;
  options.shots = config.shots;
  options.seed = seed;

  BasisRun run;
  MitigationReport report;
  switch (method) {
    case Method::unmitigated:
      run.dist = executor(circuit, config.shots, derive_seed(seed, {kTagExec}));
      run.executor_runs = 1;
      return run;
    case Method::zne:
      report = zne(circuit, executor, options);
      break;
    case Method::cdr:
      options.circuits = config.cdr_circuits;
      report = cdr(circuit, executor, simulator, options);
      break;
    case Method::ecdr:
      options.circuits = config.ecdr_circuits_per_scale;
      report = ecdr(circuit, executor, simulator, options);
      break;
    case Method::vncdr: {
      options.circuits = config.vncdr_circuits;
      Observable obs{circuit.measurement_bases()};
      report = vncdr(circuit, executor, simulator, obs, options);
      break;
    }
    case Method::zne_plus_cdr:
      options.circuits = config.znecdr_circuits_per_scale;
      report = zne_plus_cdr(circuit, executor, simulator, options);
      break;
    case Method::cdr_plus_zne:
      options.circuits = config.cdrzne_circuits;
      report = cdr_plus_zne(circuit, executor, simulator, options);
      break;
  }
  run.dist = report.mitigated;
  run.ancillary = report.ancillary_circuits;
  run.executor_runs = report.executor_runs;
  run.simulator_runs = report.simulator_runs;
  return run;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const NoiseModel noise = config.resolved_noise();

  ExperimentReport report;
  report.config = config;

  std::vector<std::uint32_t> active;
  if (config.layers == 3) {
    active = choose_active_controls(3, config.active_controls,
                                    derive_seed(config.seed, {kTagActives}));
  } else {
    for (std::uint32_t c = 0; c < (1u << config.layers) - 1; ++c) {
      active.push_back(c);
    }
  }
  report.active_control_set = active;

  const RouterSpec spec = RouterSpec::with_active_controls(
      config.layers, config.signal_alpha, config.signal_beta, active);
  const TomographySet tomo = tomography_circuits(spec);
  std::array<Circuit, 3> transpiled;
  for (std::size_t b = 0; b < 3; ++b) transpiled[b] = transpile(tomo.circuits[b]);

  SimOptions sim_options;
  sim_options.threads = config.threads;
  sim_options.dm_max_qubits = config.dm_max_qubits;
  const Executor executor = make_noisy_executor(noise, sim_options);
  const Executor simulator = make_ideal_executor(sim_options);

  Eigen::Vector2cd signal;
  signal << config.signal_alpha, config.signal_beta;
  const DensityMatrix target = DensityMatrix::pure(signal);

  for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
    const Method method = config.methods[mi];
    MethodResult result;
    try {
      const std::uint64_t reps = config.repetitions_for(method);
      for (std::uint64_t rep = 0; rep < reps; ++rep) {
        std::array<MeasurementDistribution, 3> dists;
        for (std::size_t b = 0; b < 3; ++b) {
          const std::uint64_t seed = derive_seed(
              config.seed, {kTagMethod, static_cast<std::uint64_t>(method), rep,
                            static_cast<std::uint64_t>(b)});
          BasisRun run = run_method_on_circuit(method, transpiled[b], executor,
                                               simulator, config, seed);
          result.ancillary_circuits += run.ancillary;
          result.executor_runs += run.executor_runs;
          result.simulator_runs += run.simulator_runs;
          dists[b] = std::move(run.dist);
        }
        const BlochParams bloch = post_select(dists, tomo.layout);
        const DensityMatrix rho_prime = reconstruct(bloch);
        result.fidelities.push_back(fidelity(target, rho_prime));
      }
      double mean = 0.0;
      for (double f : result.fidelities) mean += f;
      mean /= static_cast<double>(result.fidelities.size());
      double var = 0.0;
      for (double f : result.fidelities) var += (f - mean) * (f - mean);
      var /= static_cast<double>(result.fidelities.size());
      result.mean_fidelity = mean;
      result.std_dev = std::sqrt(var);
    } catch (const std::exception& e) {
      result.status = "failed";
      result.error = e.what();
      result.fidelities.clear();
      result.mean_fidelity = 0.0;
      result.std_dev = 0.0;
    }
    report.results[method_name(method)] = result;
  }
  return report;
}

namespace {

std::string format_fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace

std::string summarize_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "method,layers,mean_fidelity,std,repetitions,ancillary_circuits,status\n";
  for (Method m : report.config.methods) {
    const auto it = report.results.find(method_name(m));
    if (it == report.results.end()) continue;
    const MethodResult& r = it->second;
    out << method_name(m) << "," << report.config.layers << ",";
    if (r.status == "ok") {
      out << format_fixed(r.mean_fidelity) << "," << format_fixed(r.std_dev);
    } else {
      out << ",";
    }
    out << "," << r.fidelities.size() << "," << r.ancillary_circuits << ","
        << r.status << "\n";
  }
  return out.str();
}

std::string summarize_table(const ExperimentReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %6s %14s %10s %6s %10s %-8s\n",
                "method", "layers", "mean_fidelity", "std", "reps", "ancillary",
                "status");
  out << line;
  for (Method m : report.config.methods) {
    const auto it = report.results.find(method_name(m));
    if (it == report.results.end()) continue;
    const MethodResult& r = it->second;
    if (r.status == "ok") {
      std::snprintf(line, sizeof line, "%-12s %6d %14.6f %10.6f %6zu %10zu %-8s\n",
                    method_name(m), report.config.layers, r.mean_fidelity,
                    r.std_dev, r.fidelities.size(), r.ancillary_circuits,
                    r.status.c_str());
    } else {
      std::snprintf(line, sizeof line, "%-12s %6d %14s %10s %6zu %10zu %-8s\n",
                    method_name(m), report.config.layers, "-", "-",
                    r.fidelities.size(), r.ancillary_circuits, r.status.c_str());
    }
    out << line;
  }
  return out.str();
}

void save_report(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), errc::io, "cannot open '" + path + "' for writing");
  out << report.to_json() << "\n";
  require(out.good(), errc::io, "failed writing '" + path + "'");
}

ExperimentReport load_report(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ExperimentReport::from_json(buffer.str());
}

}  // namespace qemr
