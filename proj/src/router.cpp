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

#include "qemr/router.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "qemr/rng.hpp"

namespace qemr {

using json = nlohmann::json;

std::vector<bool> RouterSpec::active_mask() const {
  std::vector<bool> mask(n_controls(), false);
  for (std::size_t i = 0; i < controls.size(); ++i) mask[i] = controls[i].active();
  return mask;
}

void RouterSpec::validate() const {
  require(layers >= 1 && layers <= 3, errc::invalid_argument,
          "router supports 1 to 3 layers");
  require(controls.size() == n_controls(), errc::invalid_argument,
          "router needs exactly 2^layers - 1 control amplitude pairs");
  require(std::norm(signal_alpha) + std::norm(signal_beta) > 1e-12,
          errc::invalid_argument, "signal amplitudes must not both vanish");
  for (const ControlAmp& c : controls) {
    require(std::norm(c.alpha) + std::norm(c.beta) > 1e-12, errc::invalid_argument,
            "control amplitudes must not both vanish");
  }
}

RouterSpec RouterSpec::standard(int layers, cdouble signal_alpha,
                                cdouble signal_beta) {
  RouterSpec spec;
  spec.layers = layers;
  spec.signal_alpha = signal_alpha;
  spec.signal_beta = signal_beta;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  spec.controls.assign((std::size_t{1} << layers) - 1,
                       ControlAmp{cdouble(inv_sqrt2, 0.0), cdouble(inv_sqrt2, 0.0)});
  spec.validate();
  return spec;
}

RouterSpec RouterSpec::with_active_controls(
    int layers, cdouble signal_alpha, cdouble signal_beta,
    const std::vector<std::uint32_t>& active) {
  RouterSpec spec;
  spec.layers = layers;
  spec.signal_alpha = signal_alpha;
  spec.signal_beta = signal_beta;
  spec.controls.assign((std::size_t{1} << layers) - 1, ControlAmp{});
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::uint32_t idx : active) {
    require(idx < spec.controls.size(), errc::invalid_argument,
            "active control index out of range");
    spec.controls[idx] =
        ControlAmp{cdouble(inv_sqrt2, 0.0), cdouble(inv_sqrt2, 0.0)};
  }
  spec.validate();
  return spec;
}

std::vector<std::uint32_t> choose_active_controls(int layers, std::uint32_t count,
                                                  std::uint64_t seed) {
  const std::uint32_t total = (1u << layers) - 1;
  require(count <= total, errc::invalid_argument,
          "more active controls requested than controls exist");
  Prng prng(derive_seed(seed, {0x616374}));
  std::vector<std::size_t> picks = prng.sample_without_replacement(total, count);
  std::vector<std::uint32_t> out(picks.begin(), picks.end());
  std::sort(out.begin(), out.end());
  return out;
}

Circuit build_router(const RouterSpec& spec) {
  spec.validate();
  Circuit circuit(spec.n_qubits());
  circuit.add(Gate::state_prep(0, spec.signal_alpha, spec.signal_beta));
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::uint32_t c = 0; c < spec.n_controls(); ++c) {
    const RouterSpec::ControlAmp& amp = spec.controls[c];
    if (!amp.active()) continue;  // control stays |0>
    const bool is_plus = std::abs(amp.alpha - cdouble(inv_sqrt2, 0.0)) < 1e-12 &&
                         std::abs(amp.beta - cdouble(inv_sqrt2, 0.0)) < 1e-12;
    if (is_plus) {
      circuit.add(Gate::h(spec.control_qubit(c)));
    } else {
      circuit.add(Gate::state_prep(spec.control_qubit(c), amp.alpha, amp.beta));
    }
  }
  // Swap tree, one layer at a time. The layer-l router over the block that
  // starts at path `base` swaps `base` with `base + half`, moving the signal
  // into the upper half of the block when its control reads 1.
  for (int layer = 1; layer <= spec.layers; ++layer) {
    const std::uint32_t routers = 1u << (layer - 1);
    const std::uint32_t block = spec.n_paths() >> (layer - 1);
    const std::uint32_t half = block / 2;
    for (std::uint32_t r = 0; r < routers; ++r) {
      const std::uint32_t base = r * block;
      const std::uint32_t control_index = (routers - 1) + r;
      circuit.add(Gate::cswap(spec.control_qubit(control_index), base, base + half));
    }
  }
  return circuit;
}

std::uint32_t path_of(const std::string& control_bits, int layers,
                      const std::vector<bool>& active) {
  const std::uint32_t n_controls = (1u << layers) - 1;
  require(active.size() == n_controls, errc::invalid_argument,
          "active mask size mismatch");
  std::size_t n_active = 0;
  for (bool a : active) n_active += a ? 1 : 0;
  require(control_bits.size() == n_active, errc::invalid_argument,
          "control bitstring length does not match the measured controls");

  // Rank of each active control within the measured bit order.
  std::vector<std::size_t> rank(n_controls, 0);
  std::size_t next = 0;
  for (std::uint32_t c = 0; c < n_controls; ++c) {
    if (active[c]) rank[c] = next++;
  }

  std::uint32_t prefix = 0;
  for (int layer = 1; layer <= layers; ++layer) {
    const std::uint32_t control_index = ((1u << (layer - 1)) - 1) + prefix;
    std::uint32_t bit = 0;
    if (active[control_index]) {
      const char c = control_bits[rank[control_index]];
      require(c == '0' || c == '1', errc::invalid_argument,
              "control bits must be '0' or '1'");
      bit = c == '1' ? 1 : 0;
    }
    prefix = prefix * 2 + bit;
  }
  return prefix;
}

std::string path_label(int layers, std::uint32_t path_index) {
  return std::to_string(layers) + "-" + std::to_string(path_index + 1);
}

namespace {

void collect_paths(int layers, const std::vector<bool>& active, int layer,
                   std::uint32_t prefix, std::vector<std::uint32_t>& out) {
  if (layer > layers) {
    out.push_back(prefix);
    return;
  }
  const std::uint32_t control_index = ((1u << (layer - 1)) - 1) + prefix;
  collect_paths(layers, active, layer + 1, prefix * 2, out);
  if (active[control_index]) {
    collect_paths(layers, active, layer + 1, prefix * 2 + 1, out);
  }
}

}  // namespace

std::vector<std::uint32_t> reachable_paths(int layers,
                                           const std::vector<bool>& active) {
  std::vector<std::uint32_t> out;
  collect_paths(layers, active, 1, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

TomographySet tomography_circuits(const RouterSpec& spec) {
  const Circuit router = build_router(spec);

  TomographySet set;
  set.layout.layers = spec.layers;
  set.layout.active = spec.active_mask();
  for (std::uint32_t c = 0; c < spec.n_controls(); ++c) {
    if (set.layout.active[c]) {
      set.layout.measured_controls.push_back(spec.control_qubit(c));
    }
  }
  set.layout.measured_paths = reachable_paths(spec.layers, set.layout.active);

  const std::array<Basis, 3> bases = {Basis::Z, Basis::X, Basis::Y};
  for (std::size_t b = 0; b < 3; ++b) {
    Circuit circuit = router;
    for (std::uint32_t path : set.layout.measured_paths) {
      if (bases[b] == Basis::X) {
        circuit.add(Gate::h(path));
      } else if (bases[b] == Basis::Y) {
        circuit.add(Gate::sdg(path));
        circuit.add(Gate::h(path));
      }
    }
    for (std::uint32_t control : set.layout.measured_controls) {
      circuit.add(Gate::measure(control, Basis::Z));
    }
    for (std::uint32_t path : set.layout.measured_paths) {
      circuit.add(Gate::measure(path, bases[b]));
    }
    set.circuits[b] = std::move(circuit);
  }
  return set;
}

BlochParams post_select(const std::array<MeasurementDistribution, 3>& results,
                        const TomographyLayout& layout) {
  const std::size_t n_controls = layout.measured_controls.size();
  const std::size_t n_paths = layout.measured_paths.size();
  const std::size_t key_len = n_controls + n_paths;

  std::array<double, 3> p_zero{0.0, 0.0, 0.0};
  std::array<double, 3> p_one{0.0, 0.0, 0.0};
  for (std::size_t b = 0; b < 3; ++b) {
    for (const auto& [key, p] : results[b].probabilities) {
      require(key.size() == key_len, errc::invalid_argument,
              "result bitstring does not match the tomography layout");
      const std::string control_bits = key.substr(0, n_controls);
      const std::uint32_t path =
          path_of(control_bits, layout.layers, layout.active);
      const auto it = std::lower_bound(layout.measured_paths.begin(),
                                       layout.measured_paths.end(), path);
      require(it != layout.measured_paths.end() && *it == path, errc::internal,
              "signal path is not among the measured paths");
      const std::size_t pos =
          n_controls +
          static_cast<std::size_t>(it - layout.measured_paths.begin());
      if (key[pos] == '0') {
        p_zero[b] += p;
      } else {
        p_one[b] += p;
      }
    }
  }

  BlochParams bloch;
  bloch.s0 = p_zero[0] + p_one[0];
  bloch.s3 = p_zero[0] - p_one[0];
  bloch.s1 = p_zero[1] - p_one[1];
  bloch.s2 = p_zero[2] - p_one[2];
  return bloch;
}

DensityMatrix reconstruct(const BlochParams& bloch) {
  require(std::abs(bloch.s0 - 1.0) <= 1e-6, errc::precondition,
          "reconstruction expects s0 = 1");
  Eigen::MatrixXcd m(2, 2);
  m(0, 0) = cdouble(1.0 + bloch.s3, 0.0);
  m(0, 1) = cdouble(bloch.s1, -bloch.s2);
  m(1, 0) = cdouble(bloch.s1, bloch.s2);
  m(1, 1) = cdouble(1.0 - bloch.s3, 0.0);
  m *= 0.5;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.eigenvalues().minCoeff() >= 0.0) {
    return DensityMatrix(std::move(m));
  }
  // Clamp negative eigenvalues and renormalize the trace.
  Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0);
  const double trace = vals.sum();
  require(trace > 0.0, errc::numeric, "reconstruction collapsed to zero trace");
  vals /= trace;
  Eigen::MatrixXcd projected = solver.eigenvectors() *
                               vals.asDiagonal().toDenseMatrix().cast<cdouble>() *
                               solver.eigenvectors().adjoint();
  return DensityMatrix(std::move(projected));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& rho_prime) {
  require(rho.dim() == rho_prime.dim(), errc::invalid_argument,
          "density matrix dimensions differ");
  rho.validate(1e-8, true);
  rho_prime.validate(1e-8, true);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix());
  const Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXcd sqrt_rho =
      solver.eigenvectors() *
      vals.cwiseSqrt().asDiagonal().toDenseMatrix().cast<cdouble>() *
      solver.eigenvectors().adjoint();

  Eigen::MatrixXcd inner = sqrt_rho * rho_prime.matrix() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint().eval());  // clean fp asymmetry
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner_solver(
      inner, Eigen::EigenvaluesOnly);
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < inner_solver.eigenvalues().size(); ++i) {
    root_sum += std::sqrt(std::max(0.0, inner_solver.eigenvalues()(i)));
  }
  return std::min(1.0, root_sum * root_sum);
}

std::string qst_result_json(const BlochParams& bloch,
                            const DensityMatrix& rho_prime,
                            double fidelity_value) {
  json obj;
  obj["S"] = {bloch.s0, bloch.s1, bloch.s2, bloch.s3};
  json entries = json::array();
  for (Eigen::Index i = 0; i < rho_prime.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho_prime.dim(); ++j) {
      entries.push_back({rho_prime.matrix()(i, j).real(),
                         rho_prime.matrix()(i, j).imag()});
    }
  }
  obj["rho_prime"] = entries;
  obj["fidelity"] = fidelity_value;
  return obj.dump();
}

}  // namespace qemr
