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

#include "qemr/mitigation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "qemr/rng.hpp"

namespace qemr {

using json = nlohmann::json;

namespace {

// Seed-path tags; fixed so runs are reproducible across versions.
enum : std::uint64_t {
  kTagFold = 1,
  kTagNearClifford = 2,
  kTagExecutor = 3,
  kTagSimulator = 4,
  kTagStage = 5,
  kOriginal = 0xffffffff,
};

Circuit ensure_transpiled(const Circuit& circuit) {
  if (is_basis_level(circuit)) {
    circuit.validate();
    return circuit;
  }
  return transpile(circuit);
}

void require_scales(const std::vector<double>& lambdas) {
  require(!lambdas.empty(), errc::precondition, "no noise scales given");
  bool has_one = false;
  for (double l : lambdas) {
    require(l >= 1.0, errc::precondition, "noise scales must be >= 1");
    if (std::abs(l - 1.0) < 1e-12) has_one = true;
  }
  require(has_one, errc::precondition, "noise scales must include 1");
  std::set<double> distinct(lambdas.begin(), lambdas.end());
  require(distinct.size() == lambdas.size(), errc::precondition,
          "noise scales must be distinct");
}

std::set<std::string> key_union(
    std::initializer_list<const MeasurementDistribution*> dists) {
  std::set<std::string> keys;
  for (const MeasurementDistribution* d : dists) {
    for (const auto& [key, p] : d->probabilities) keys.insert(key);
  }
  return keys;
}

void append_pairs(std::vector<std::pair<double, double>>& pairs,
                  const MeasurementDistribution& noisy,
                  const MeasurementDistribution& ideal) {
  for (const std::string& key : key_union({&noisy, &ideal})) {
    pairs.emplace_back(noisy.at(key), ideal.at(key));
  }
}

// Per-bin quadratic read out at scale zero.
std::map<std::string, double> extrapolate_bins(
    const std::vector<double>& lambdas,
    const std::vector<MeasurementDistribution>& dists) {
  std::set<std::string> keys;
  for (const auto& d : dists) {
    for (const auto& [key, p] : d.probabilities) keys.insert(key);
  }
  std::map<std::string, double> values;
  std::vector<std::pair<double, double>> points(lambdas.size());
  for (const std::string& key : keys) {
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      points[j] = {lambdas[j], dists[j].at(key)};
    }
    values[key] = fit_quadratic(points).eval(0.0);
  }
  return values;
}

// Least squares for the combination weights. Among minimizers of
// ||y - X w||, prefer total weight one, then minimum norm: the data sets the
// signal reconstruction, the tie-break keeps total probability intact when
// the data cannot distinguish the scales.
std::vector<double> solve_weights(const Eigen::MatrixXd& design,
                                  const Eigen::VectorXd& target) {
  const Eigen::Index cols = design.cols();
  require(design.norm() > 1e-14, errc::singular_fit,
          "combination-weight fit has an all-zero design matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      design, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = std::max(design.rows(), cols) * 1e-13 * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  // Minimum-norm least-squares solution.
  Eigen::VectorXd coeff = svd.matrixU().leftCols(rank).transpose() * target;
  for (Eigen::Index i = 0; i < rank; ++i) coeff(i) /= sv(i);
  Eigen::VectorXd w = svd.matrixV().leftCols(rank) * coeff;
  if (rank < cols) {
    const Eigen::MatrixXd null_basis = svd.matrixV().rightCols(cols - rank);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(cols);
    const Eigen::VectorXd n1 = null_basis.transpose() * ones;
    const double n1sq = n1.squaredNorm();
    if (n1sq > 1e-20) {
      const double gap = 1.0 - ones.dot(w);
      w += null_basis * (n1 * (gap / n1sq));
    }
  }
  return std::vector<double>(w.data(), w.data() + w.size());
}

json model_to_json(const RegressionModel& m) {
  return json{{"a", m.a},
              {"b", m.b},
              {"residual_sum", m.residual_sum},
              {"n_points", m.n_points}};
}

RegressionModel model_from_json(const json& j) {
  RegressionModel m;
  m.a = j.value("a", 1.0);
  m.b = j.value("b", 0.0);
  m.residual_sum = j.value("residual_sum", 0.0);
  m.n_points = j.value("n_points", std::size_t{0});
  return m;
}

json quad_to_json(const QuadraticModel& q) {
  return json{{"c0", q.c0}, {"c1", q.c1}, {"c2", q.c2}};
}

QuadraticModel quad_from_json(const json& j) {
  return QuadraticModel{j.value("c0", 0.0), j.value("c1", 0.0), j.value("c2", 0.0)};
}

json dist_to_json(const MeasurementDistribution& d) {
  json obj = json::object();
  for (const auto& [key, p] : d.probabilities) obj[key] = p;
  obj["shots"] = d.shots;
  return obj;
}

MeasurementDistribution dist_from_json(const json& obj) {
  MeasurementDistribution d;
  for (const auto& [key, value] : obj.items()) {
    if (key == "shots") {
      d.shots = value.get<std::uint64_t>();
    } else {
      d.probabilities[key] = value.get<double>();
    }
  }
  return d;
}

}  // namespace

MeasurementDistribution clip_renormalize(
    const std::map<std::string, double>& values, std::uint64_t shots) {
  require(!values.empty(), errc::precondition, "no bins to renormalize");
  MeasurementDistribution out;
  out.shots = shots;
  double total = 0.0;
  for (const auto& [key, v] : values) {
    require(std::isfinite(v), errc::numeric, "non-finite mitigated value");
    const double clamped = std::clamp(v, 0.0, 1.0);
    out.probabilities[key] = clamped;
    total += clamped;
  }
  if (total <= 0.0) {
    const double uniform = 1.0 / static_cast<double>(values.size());
    for (auto& [key, v] : out.probabilities) v = uniform;
    return out;
  }
  for (auto& [key, v] : out.probabilities) v /= total;
  return out;
}

MitigationReport zne(const Circuit& circuit, const Executor& executor,
                     const MitigationOptions& options) {
  require_scales(options.lambdas);
  const Circuit base = ensure_transpiled(circuit);

  MitigationReport report;
  report.method = "zne";
  report.lambdas = options.lambdas;
  for (std::size_t j = 0; j < options.lambdas.size(); ++j) {
    auto [folded, plan] = fold(base, options.lambdas[j], options.fold_mode,
                               derive_seed(options.seed, {kTagFold, j}));
    report.per_lambda_distributions.push_back(executor(
        folded, options.shots, derive_seed(options.seed, {kTagExecutor, j})));
    ++report.executor_runs;
    if (std::abs(options.lambdas[j] - 1.0) < 1e-12) {
      report.raw = report.per_lambda_distributions.back();
    }
  }
  report.mitigated = clip_renormalize(
      extrapolate_bins(options.lambdas, report.per_lambda_distributions),
      report.raw.shots);
  report.ancillary_circuits = report.executor_runs - 1;
  return report;
}

MitigationReport cdr(const Circuit& circuit, const Executor& executor,
                     const Executor& simulator, const MitigationOptions& options) {
  require(options.circuits >= 2, errc::precondition,
          "cdr needs at least two near-Clifford circuits");
  const Circuit base = ensure_transpiled(circuit);

  MitigationReport report;
  report.method = "cdr";
  report.raw = executor(base, options.shots,
                        derive_seed(options.seed, {kTagExecutor, kOriginal}));
  ++report.executor_runs;

  std::vector<std::pair<double, double>> pairs;
  for (std::size_t m = 0; m < options.circuits; ++m) {
    const Circuit companion = make_near_clifford(
        base, options.p_convert, derive_seed(options.seed, {kTagNearClifford, m}));
    const MeasurementDistribution noisy = executor(
        companion, options.shots, derive_seed(options.seed, {kTagExecutor, m}));
    const MeasurementDistribution ideal = simulator(
        companion, options.shots, derive_seed(options.seed, {kTagSimulator, m}));
    ++report.executor_runs;
    ++report.simulator_runs;
    append_pairs(pairs, noisy, ideal);
  }
  report.model = fit_linear(pairs);

  std::map<std::string, double> values;
  for (const auto& [key, p] : report.raw.probabilities) {
    values[key] = report.model.apply(p);
  }
  report.mitigated = clip_renormalize(values, report.raw.shots);
  report.ancillary_circuits = options.circuits;
  return report;
}

MitigationReport ecdr(const Circuit& circuit, const Executor& executor,
                      const Executor& simulator, const MitigationOptions& options) {
  require_scales(options.lambdas);
  require(options.circuits >= 2, errc::precondition,
          "ecdr needs at least two near-Clifford circuits per scale");
  const Circuit base = ensure_transpiled(circuit);
  const std::size_t n_scales = options.lambdas.size();

  MitigationReport report;
  report.method = "ecdr";
  report.lambdas = options.lambdas;

  std::vector<std::pair<double, double>> slope_points;
  std::vector<std::pair<double, double>> intercept_points;
  for (std::size_t j = 0; j < n_scales; ++j) {
    auto [folded, plan] = fold(base, options.lambdas[j], options.fold_mode,
                               derive_seed(options.seed, {kTagFold, j}));
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t m = 0; m < options.circuits; ++m) {
      const Circuit companion =
          make_near_clifford(folded, options.p_convert,
                             derive_seed(options.seed, {kTagNearClifford, j, m}));
      const MeasurementDistribution noisy =
          executor(companion, options.shots,
                   derive_seed(options.seed, {kTagExecutor, j, m}));
      const MeasurementDistribution ideal =
          simulator(companion, options.shots,
                    derive_seed(options.seed, {kTagSimulator, j, m}));
      ++report.executor_runs;
      ++report.simulator_runs;
      append_pairs(pairs, noisy, ideal);
    }
    RegressionModel model;
    try {
      model = fit_linear(pairs);
    } catch (const error& e) {
      if (e.code() == errc::singular_fit) {
        fail(errc::singular_fit,
             "singular regression at scale " +
                 std::to_string(options.lambdas[j]) + ": " + e.what());
      }
      throw;
    }
    report.per_lambda_models.push_back(model);
    slope_points.emplace_back(options.lambdas[j], model.a);
    intercept_points.emplace_back(options.lambdas[j], model.b);
  }

  report.slope_fit = fit_quadratic(slope_points);
  report.intercept_fit = fit_quadratic(intercept_points);
  report.extrapolated_a = report.slope_fit.eval(0.0);
  report.extrapolated_b = report.intercept_fit.eval(0.0);
  if (n_scales == 3) {
    report.gammas = lagrange_weights(options.lambdas, 0.0);
  }

  report.raw = executor(base, options.shots,
                        derive_seed(options.seed, {kTagExecutor, kOriginal}));
  ++report.executor_runs;

  std::map<std::string, double> values;
  for (const auto& [key, p] : report.raw.probabilities) {
    values[key] = report.extrapolated_a * p + report.extrapolated_b;
  }
  report.mitigated = clip_renormalize(values, report.raw.shots);
  report.ancillary_circuits = n_scales * options.circuits;
  return report;
}

MitigationReport vncdr(const Circuit& circuit, const Executor& executor,
                       const Executor& simulator, const Observable& observable,
                       const MitigationOptions& options) {
  require_scales(options.lambdas);
  require(options.circuits >= 1, errc::precondition,
          "vncdr needs at least one near-Clifford circuit");
  const Circuit base = ensure_transpiled(circuit);
  const std::size_t n_scales = options.lambdas.size();
  const std::size_t m_count = options.circuits;

  MitigationReport report;
  report.method = "vncdr";
  report.lambdas = options.lambdas;

  Eigen::MatrixXd design(m_count, n_scales);
  Eigen::VectorXd target(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const Circuit companion = make_near_clifford(
        base, options.p_convert, derive_seed(options.seed, {kTagNearClifford, m}));
    const MeasurementDistribution ideal = simulator(
        companion, options.shots, derive_seed(options.seed, {kTagSimulator, m}));
    ++report.simulator_runs;
    target(static_cast<Eigen::Index>(m)) = expectation(ideal, observable);
    for (std::size_t j = 0; j < n_scales; ++j) {
      auto [folded, plan] =
          fold(companion, options.lambdas[j], options.fold_mode,
               derive_seed(options.seed, {kTagFold, m, j}));
      const MeasurementDistribution noisy =
          executor(folded, options.shots,
                   derive_seed(options.seed, {kTagExecutor, m, j}));
      ++report.executor_runs;
      design(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) =
          expectation(noisy, observable);
    }
  }
  report.weights = solve_weights(design, target);

  for (std::size_t j = 0; j < n_scales; ++j) {
    auto [folded, plan] = fold(base, options.lambdas[j], options.fold_mode,
                               derive_seed(options.seed, {kTagFold, kOriginal, j}));
    report.per_lambda_distributions.push_back(
        executor(folded, options.shots,
                 derive_seed(options.seed, {kTagExecutor, kOriginal, j})));
    ++report.executor_runs;
    if (std::abs(options.lambdas[j] - 1.0) < 1e-12) {
      report.raw = report.per_lambda_distributions.back();
    }
  }

  std::set<std::string> keys;
  for (const auto& d : report.per_lambda_distributions) {
    for (const auto& [key, p] : d.probabilities) keys.insert(key);
  }
  std::map<std::string, double> values;
  for (const std::string& key : keys) {
    double v = 0.0;
    for (std::size_t j = 0; j < n_scales; ++j) {
      v += report.weights[j] * report.per_lambda_distributions[j].at(key);
    }
    values[key] = v;
  }
  report.mitigated = clip_renormalize(values, report.raw.shots);
  report.ancillary_circuits = n_scales * m_count;
  return report;
}

MitigationReport zne_plus_cdr(const Circuit& circuit, const Executor& executor,
                              const Executor& simulator,
                              const MitigationOptions& options) {
  require_scales(options.lambdas);
  const Circuit base = ensure_transpiled(circuit);
  const std::size_t n_scales = options.lambdas.size();

  MitigationReport report;
  report.method = "zne+cdr";
  report.lambdas = options.lambdas;

  std::vector<MeasurementDistribution> mitigated_per_scale;
  for (std::size_t j = 0; j < n_scales; ++j) {
    auto [folded, plan] = fold(base, options.lambdas[j], options.fold_mode,
                               derive_seed(options.seed, {kTagFold, j}));
    MitigationOptions stage = options;
    stage.seed = derive_seed(options.seed, {kTagStage, j});
    const MitigationReport sub = cdr(folded, executor, simulator, stage);
    report.executor_runs += sub.executor_runs;
    report.simulator_runs += sub.simulator_runs;
    report.per_lambda_models.push_back(sub.model);
    mitigated_per_scale.push_back(sub.mitigated);
    if (std::abs(options.lambdas[j] - 1.0) < 1e-12) report.raw = sub.raw;
  }

  if (n_scales == 1) {
    // A single scale leaves nothing to extrapolate; this is plain cdr.
    report.mitigated = mitigated_per_scale.front();
  } else {
    report.per_lambda_distributions = mitigated_per_scale;
    report.mitigated = clip_renormalize(
        extrapolate_bins(options.lambdas, mitigated_per_scale), report.raw.shots);
  }
  report.ancillary_circuits = report.executor_runs - 1;
  return report;
}

MitigationReport cdr_plus_zne(const Circuit& circuit, const Executor& executor,
                              const Executor& simulator,
                              const MitigationOptions& options) {
  require_scales(options.lambdas);
  require(options.circuits >= 2, errc::singular_fit,
          "cdr+zne needs at least two near-Clifford circuits to fit a line");
  const Circuit base = ensure_transpiled(circuit);

  MitigationReport report;
  report.method = "cdr+zne";
  report.lambdas = options.lambdas;

  std::vector<std::pair<double, double>> pairs;
  for (std::size_t m = 0; m < options.circuits; ++m) {
    const Circuit companion = make_near_clifford(
        base, options.p_convert, derive_seed(options.seed, {kTagNearClifford, m}));
    MitigationOptions stage = options;
    stage.seed = derive_seed(options.seed, {kTagStage, m});
    const MitigationReport sub = zne(companion, executor, stage);
    report.executor_runs += sub.executor_runs;
    const MeasurementDistribution ideal = simulator(
        companion, options.shots, derive_seed(options.seed, {kTagSimulator, m}));
    ++report.simulator_runs;
    append_pairs(pairs, sub.mitigated, ideal);
  }
  report.model = fit_linear(pairs);

  MitigationOptions stage = options;
  stage.seed = derive_seed(options.seed, {kTagStage, kOriginal});
  const MitigationReport original_zne = zne(base, executor, stage);
  report.executor_runs += original_zne.executor_runs;
  report.raw = original_zne.raw;

  std::map<std::string, double> values;
  for (const auto& [key, p] : original_zne.mitigated.probabilities) {
    values[key] = report.model.apply(p);
  }
  report.mitigated = clip_renormalize(values, report.raw.shots);
  report.ancillary_circuits = report.executor_runs - 1;
  return report;
}

std::string MitigationReport::to_json() const {
  json obj;
  obj["method"] = method;
  obj["lambdas"] = lambdas;
  obj["raw"] = dist_to_json(raw);
  obj["mitigated"] = dist_to_json(mitigated);
  json scales = json::array();
  for (const auto& d : per_lambda_distributions) scales.push_back(dist_to_json(d));
  obj["per_lambda_distributions"] = scales;
  json models = json::array();
  for (const auto& m : per_lambda_models) models.push_back(model_to_json(m));
  obj["per_lambda_models"] = models;
  obj["slope_fit"] = quad_to_json(slope_fit);
  obj["intercept_fit"] = quad_to_json(intercept_fit);
  obj["extrapolated_a"] = extrapolated_a;
  obj["extrapolated_b"] = extrapolated_b;
  obj["gammas"] = gammas;
  obj["weights"] = weights;
  obj["model"] = model_to_json(model);
  obj["ancillary_circuits"] = ancillary_circuits;
  obj["executor_runs"] = executor_runs;
  obj["simulator_runs"] = simulator_runs;
  return obj.dump();
}

MitigationReport MitigationReport::from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("bad mitigation report JSON: ") + e.what());
  }
  MitigationReport r;
  r.method = obj.value("method", "");
  r.lambdas = obj.value("lambdas", std::vector<double>{});
  r.raw = dist_from_json(obj.at("raw"));
  r.mitigated = dist_from_json(obj.at("mitigated"));
  for (const auto& d : obj.value("per_lambda_distributions", json::array())) {
    r.per_lambda_distributions.push_back(dist_from_json(d));
  }
  for (const auto& m : obj.value("per_lambda_models", json::array())) {
    r.per_lambda_models.push_back(model_from_json(m));
  }
  if (obj.contains("slope_fit")) r.slope_fit = quad_from_json(obj["slope_fit"]);
  if (obj.contains("intercept_fit")) {
    r.intercept_fit = quad_from_json(obj["intercept_fit"]);
  }
  r.extrapolated_a = obj.value("extrapolated_a", 1.0);
  r.extrapolated_b = obj.value("extrapolated_b", 0.0);
  r.gammas = obj.value("gammas", std::vector<double>{});
  r.weights = obj.value("weights", std::vector<double>{});
  if (obj.contains("model")) r.model = model_from_json(obj["model"]);
  r.ancillary_circuits = obj.value("ancillary_circuits", std::size_t{0});
  r.executor_runs = obj.value("executor_runs", std::size_t{0});
  r.simulator_runs = obj.value("simulator_runs", std::size_t{0});
  return r;
}

}  // namespace qemr
