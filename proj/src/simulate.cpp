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

#include "qemr/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "qemr/rng.hpp"
#include "qemr/statevector.hpp"

namespace qemr {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// MeasurementDistribution / Observable
// ---------------------------------------------------------------------------

double MeasurementDistribution::total() const {
  double t = 0.0;
  for (const auto& [key, p] : probabilities) t += p;
  return t;
}

void MeasurementDistribution::validate() const {
  std::size_t len = std::string::npos;
  for (const auto& [key, p] : probabilities) {
    if (len == std::string::npos) len = key.size();
    require(key.size() == len, errc::invalid_argument,
            "distribution keys have mixed lengths");
    require(p >= -1e-12 && p <= 1.0 + 1e-12, errc::numeric,
            "probability out of [0, 1]");
  }
  require(std::abs(total() - 1.0) <= 1e-9, errc::numeric,
          "probabilities do not sum to 1");
}

std::string MeasurementDistribution::to_json() const {
  json obj = json::object();
  for (const auto& [key, p] : probabilities) obj[key] = p;
  obj["shots"] = shots;
  return obj.dump();
}

MeasurementDistribution MeasurementDistribution::from_json(
    const std::string& text) {
  MeasurementDistribution dist;
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("bad distribution JSON: ") + e.what());
  }
  require(obj.is_object(), errc::parse, "distribution JSON must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (key == "shots") {
      dist.shots = value.get<std::uint64_t>();
    } else {
      dist.probabilities[key] = value.get<double>();
    }
  }
  return dist;
}

double total_variation(const MeasurementDistribution& a,
                       const MeasurementDistribution& b) {
  double sum = 0.0;
  for (const auto& [key, p] : a.probabilities) sum += std::abs(p - b.at(key));
  for (const auto& [key, p] : b.probabilities) {
    if (a.probabilities.find(key) == a.probabilities.end()) sum += std::abs(p);
  }
  return 0.5 * sum;
}

double Observable::eigenvalue(const std::string& bitstring) const {
  double e = 1.0;
  for (char c : bitstring) {
    if (c == '1') e = -e;
  }
  return e;
}

double expectation(const MeasurementDistribution& dist, const Observable& obs) {
  double value = 0.0;
  for (const auto& [key, p] : dist.probabilities) {
    require(key.size() == obs.bases.size(), errc::invalid_argument,
            "bitstring length does not match observable");
    value += p * obs.eigenvalue(key);
  }
  return value;
}

MeasurementDistribution sample(const MeasurementDistribution& dist,
                               std::uint64_t shots, std::uint64_t seed) {
  require(shots >= 1, errc::precondition, "shot count must be >= 1");
  std::vector<const std::string*> keys;
  std::vector<double> cdf;
  keys.reserve(dist.probabilities.size());
  double acc = 0.0;
  for (const auto& [key, p] : dist.probabilities) {
    acc += std::max(0.0, p);
    keys.push_back(&key);
    cdf.push_back(acc);
  }
  require(acc > 0.0, errc::precondition, "cannot sample an empty distribution");
  Prng prng(derive_seed(seed, {0x73616d70}));
  std::vector<std::uint64_t> counts(keys.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = prng.uniform() * acc;
    std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++counts[std::min(idx, keys.size() - 1)];
  }
  MeasurementDistribution out;
  out.shots = shots;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (counts[i] > 0) {
      out.probabilities[*keys[i]] =
          static_cast<double>(counts[i]) / static_cast<double>(shots);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ideal simulation
// ---------------------------------------------------------------------------

namespace {

MeasurementDistribution marginal_to_distribution(const std::vector<double>& m,
                                                 std::size_t n_bits) {
  MeasurementDistribution dist;
  dist.shots = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] > 0.0) dist.probabilities[bits_to_key(i, n_bits)] = m[i];
  }
  return dist;
}

// Independent classical bit flips on every measured position.
void apply_readout_flips(std::vector<double>& probs, std::size_t n_bits,
                         double flip) {
  if (flip <= 0.0) return;
  for (std::size_t b = 0; b < n_bits; ++b) {
    const std::size_t mask = std::size_t{1} << b;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (i & mask) continue;
      const double p0 = probs[i];
      const double p1 = probs[i | mask];
      probs[i] = (1.0 - flip) * p0 + flip * p1;
      probs[i | mask] = (1.0 - flip) * p1 + flip * p0;
    }
  }
}

}  // namespace

MeasurementDistribution simulate_ideal(const Circuit& circuit,
                                       const SimOptions& options) {
  circuit.validate();
  require(circuit.n_qubits <= options.max_qubits, errc::capacity,
          "circuit exceeds the simulator qubit limit");
  StateVector state(circuit.n_qubits);
  state.apply_unitaries(circuit);
  const std::vector<std::uint32_t> measured = circuit.measured_qubits();
  require(!measured.empty(), errc::precondition, "circuit measures no qubits");
  return marginal_to_distribution(state.marginal(measured), measured.size());
}

// ---------------------------------------------------------------------------
// Density-matrix simulation
// ---------------------------------------------------------------------------

namespace {

// rho -> U rho U^dagger for a one-qubit unitary.
void dm_apply_1q(Eigen::MatrixXcd& rho, std::uint32_t q,
                 const std::array<cdouble, 4>& u) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index mask = Eigen::Index{1} << q;
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const cdouble a0 = rho(i, j);
      const cdouble a1 = rho(i | mask, j);
      rho(i, j) = u[0] * a0 + u[1] * a1;
      rho(i | mask, j) = u[2] * a0 + u[3] * a1;
    }
  }
  const std::array<cdouble, 4> uc = {std::conj(u[0]), std::conj(u[1]),
                                     std::conj(u[2]), std::conj(u[3])};
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (j & mask) continue;
      const cdouble b0 = rho(i, j);
      const cdouble b1 = rho(i, j | mask);
      rho(i, j) = uc[0] * b0 + uc[1] * b1;
      rho(i, j | mask) = uc[2] * b0 + uc[3] * b1;
    }
  }
}

void dm_apply_cx(Eigen::MatrixXcd& rho, std::uint32_t control,
                 std::uint32_t target) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index c = Eigen::Index{1} << control;
  const Eigen::Index t = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & c) && !(i & t)) rho.row(i).swap(rho.row(i | t));
  }
  for (Eigen::Index j = 0; j < dim; ++j) {
    if ((j & c) && !(j & t)) rho.col(j).swap(rho.col(j | t));
  }
}

void dm_apply_cswap(Eigen::MatrixXcd& rho, std::uint32_t control,
                    std::uint32_t qa, std::uint32_t qb) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index c = Eigen::Index{1} << control;
  const Eigen::Index a = Eigen::Index{1} << qa;
  const Eigen::Index b = Eigen::Index{1} << qb;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & c) && (i & a) && !(i & b)) rho.row(i).swap(rho.row((i & ~a) | b));
  }
  for (Eigen::Index j = 0; j < dim; ++j) {
    if ((j & c) && (j & a) && !(j & b)) rho.col(j).swap(rho.col((j & ~a) | b));
  }
}

// Local depolarizing: rho -> (1-p) rho + p Tr_T(rho) (x) I / 2^|T|.
void dm_depolarize(Eigen::MatrixXcd& rho, const std::vector<std::uint32_t>& targets,
                   double p) {
  if (p <= 0.0) return;
  const Eigen::Index dim = rho.rows();
  Eigen::Index tmask = 0;
  for (std::uint32_t q : targets) tmask |= Eigen::Index{1} << q;
  const Eigen::Index sub = Eigen::Index{1} << targets.size();

  std::vector<Eigen::Index> expand(static_cast<std::size_t>(sub), 0);
  for (Eigen::Index x = 0; x < sub; ++x) {
    Eigen::Index e = 0;
    for (std::size_t b = 0; b < targets.size(); ++b) {
      if ((x >> b) & 1) e |= Eigen::Index{1} << targets[b];
    }
    expand[static_cast<std::size_t>(x)] = e;
  }

  std::vector<Eigen::Index> rest;
  rest.reserve(static_cast<std::size_t>(dim / sub));
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & tmask) == 0) rest.push_back(i);
  }

  // Partial traces over the target subspace, taken before scaling.
  Eigen::MatrixXcd traces(rest.size(), rest.size());
  for (std::size_t a = 0; a < rest.size(); ++a) {
    for (std::size_t b = 0; b < rest.size(); ++b) {
      cdouble s{0.0, 0.0};
      for (Eigen::Index x = 0; x < sub; ++x) {
        s += rho(rest[a] | expand[static_cast<std::size_t>(x)],
                 rest[b] | expand[static_cast<std::size_t>(x)]);
      }
      traces(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  }

  rho *= (1.0 - p);
  const double fill = p / static_cast<double>(sub);
  for (std::size_t a = 0; a < rest.size(); ++a) {
    for (std::size_t b = 0; b < rest.size(); ++b) {
      const cdouble add =
          fill * traces(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      for (Eigen::Index x = 0; x < sub; ++x) {
        rho(rest[a] | expand[static_cast<std::size_t>(x)],
            rest[b] | expand[static_cast<std::size_t>(x)]) += add;
      }
    }
  }
}

}  // namespace

DensityMatrix noisy_state(const Circuit& circuit, const NoiseModel& noise,
                          const SimOptions& options) {
  circuit.validate();
  noise.validate();
  require(circuit.n_qubits <= options.max_qubits, errc::capacity,
          "circuit exceeds the simulator qubit limit");
  require(circuit.n_qubits <= options.dm_max_qubits, errc::capacity,
          "circuit exceeds the density-matrix qubit limit");
  const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(0, 0) = 1.0;
  for (const Gate& g : circuit.gates) {
    if (!g.is_unitary()) continue;
    switch (g.kind) {
      case GateKind::CX:
        dm_apply_cx(rho, g.targets[0], g.targets[1]);
        break;
      case GateKind::CSwap:
        dm_apply_cswap(rho, g.targets[0], g.targets[1], g.targets[2]);
        break;
      default:
        dm_apply_1q(rho, g.targets[0], gate_matrix_1q(g));
        break;
    }
    dm_depolarize(rho, g.targets, g.targets.size() == 1 ? noise.p1 : noise.p2);
  }
  DensityMatrix out(std::move(rho));
  if (noise.global_eps > 0.0) {
    out = apply_global_depolarizing(out, noise.global_eps, 1);
  }
  return out;
}

MeasurementDistribution simulate_noisy(const Circuit& circuit,
                                       const NoiseModel& noise,
                                       const SimOptions& options) {
  DensityMatrix rho = noisy_state(circuit, noise, options);
  const std::vector<std::uint32_t> measured = circuit.measured_qubits();
  require(!measured.empty(), errc::precondition, "circuit measures no qubits");
  std::vector<double> marg(std::size_t{1} << measured.size(), 0.0);
  const Eigen::Index dim = rho.dim();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double p = rho.matrix()(i, i).real();
    if (p == 0.0) continue;
    std::size_t key = 0;
    for (std::size_t b = 0; b < measured.size(); ++b) {
      key |= ((static_cast<std::size_t>(i) >> measured[b]) & 1u) << b;
    }
    marg[key] += p;
  }
  apply_readout_flips(marg, measured.size(), noise.readout_flip);
  return marginal_to_distribution(marg, measured.size());
}

// ---------------------------------------------------------------------------
// Trajectory simulation
// ---------------------------------------------------------------------------

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned t_count = static_cast<unsigned>(
      std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(t_count);
  for (unsigned t = 0; t < t_count; ++t) {
    pool.emplace_back([&, t]() {
      const std::size_t begin = n * t / t_count;
      const std::size_t end = n * (t + 1) / t_count;
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

namespace {

struct FaultEvent {
  std::uint32_t gate_index;
  std::uint32_t pauli_code;  // base-4 digits, one per gate target
};

void apply_fault(StateVector& state, const Gate& gate, std::uint32_t code) {
  for (std::uint32_t q : gate.targets) {
    state.apply_pauli(q, static_cast<int>(code & 3u));
    code >>= 2;
  }
}

std::size_t sample_outcome(const std::vector<cdouble>& amps, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    acc += std::norm(amps[i]);
    if (u < acc) return i;
  }
  return amps.size() - 1;
}

}  // namespace

MeasurementDistribution simulate_trajectories(const Circuit& circuit,
                                              const NoiseModel& noise,
                                              std::uint64_t shots,
                                              std::uint64_t seed,
                                              const SimOptions& options) {
  circuit.validate();
  noise.validate();
  require(shots >= 1, errc::precondition, "trajectory sampling needs shots >= 1");
  require(circuit.n_qubits <= options.max_qubits, errc::capacity,
          "circuit exceeds the simulator qubit limit");

  const std::vector<std::uint32_t> measured = circuit.measured_qubits();
  require(!measured.empty(), errc::precondition, "circuit measures no qubits");
  const std::size_t n_meas = measured.size();
  const std::uint64_t meas_mask = (std::uint64_t{1} << n_meas) - 1;

  std::vector<const Gate*> gates;
  std::vector<double> site_p;
  for (const Gate& g : circuit.gates) {
    if (!g.is_unitary()) continue;
    gates.push_back(&g);
    site_p.push_back(g.targets.size() == 1 ? noise.p1 : noise.p2);
  }

  // Ideal states after every `stride` gates let each faulty shot start at its
  // first fault instead of replaying the whole prefix. The cache is capped at
  // ~256 MB; deep circuits just get a coarser stride.
  const std::size_t dim = std::size_t{1} << circuit.n_qubits;
  const std::size_t state_bytes = dim * sizeof(cdouble);
  const std::size_t budget = std::size_t{256} << 20;
  std::size_t stride = 1;
  if (!gates.empty() && state_bytes * gates.size() > budget) {
    stride = (state_bytes * gates.size() + budget - 1) / budget;
  }

  std::vector<StateVector> checkpoints;  // state after gate (c+1)*stride - 1
  StateVector final_state(circuit.n_qubits);
  for (std::size_t g = 0; g < gates.size(); ++g) {
    final_state.apply(*gates[g]);
    if ((g + 1) % stride == 0) checkpoints.push_back(final_state);
  }

  std::vector<double> ideal_cdf = final_state.marginal(measured);
  double acc = 0.0;
  for (double& v : ideal_cdf) {
    acc += v;
    v = acc;
  }

  const unsigned threads = std::max(1u, options.threads);
  const std::size_t n_chunks = threads;
  std::vector<std::vector<std::uint64_t>> chunk_counts(
      n_chunks, std::vector<std::uint64_t>(std::size_t{1} << n_meas, 0));

  parallel_for(n_chunks, threads, [&](std::size_t chunk) {
    auto& counts = chunk_counts[chunk];
    const std::uint64_t begin = shots * chunk / n_chunks;
    const std::uint64_t end = shots * (chunk + 1) / n_chunks;
    StateVector work(circuit.n_qubits);
    std::vector<FaultEvent> faults;
    for (std::uint64_t shot = begin; shot < end; ++shot) {
      Prng prng(derive_seed(seed, {0x74726a, shot}));
      std::uint64_t outcome = 0;
      if (noise.global_eps > 0.0 && prng.uniform() < noise.global_eps) {
        // Fully mixed state: the measured marginal is uniform.
        outcome = prng.bits() & meas_mask;
      } else {
        faults.clear();
        for (std::size_t g = 0; g < gates.size(); ++g) {
          if (site_p[g] > 0.0 && prng.uniform() < site_p[g]) {
            const std::size_t k = gates[g]->targets.size();
            faults.push_back({static_cast<std::uint32_t>(g),
                              static_cast<std::uint32_t>(
                                  prng.below(std::uint64_t{1} << (2 * k)))});
          }
        }
        if (faults.empty()) {
          const double u = prng.uniform() * acc;
          std::size_t idx = static_cast<std::size_t>(
              std::lower_bound(ideal_cdf.begin(), ideal_cdf.end(), u) -
              ideal_cdf.begin());
          outcome = std::min(idx, ideal_cdf.size() - 1);
        } else {
          const std::size_t first = faults.front().gate_index;
          std::size_t replay_from = 0;
          if (first + 1 >= stride) {
            const std::size_t c = (first + 1) / stride - 1;
            work = checkpoints[c];
            replay_from = (c + 1) * stride;
          } else {
            work.reset();
          }
          for (std::size_t g = replay_from; g <= first; ++g) {
            work.apply(*gates[g]);
          }
          std::size_t fi = 0;
          for (std::size_t g = first; g < gates.size(); ++g) {
            if (g > first) work.apply(*gates[g]);
            if (fi < faults.size() && faults[fi].gate_index == g) {
              apply_fault(work, *gates[g], faults[fi].pauli_code);
              ++fi;
            }
          }
          const std::size_t full = sample_outcome(work.amplitudes(), prng.uniform());
          std::uint64_t key = 0;
          for (std::size_t b = 0; b < n_meas; ++b) {
            key |= ((full >> measured[b]) & 1u) << b;
          }
          outcome = key;
        }
      }
      if (noise.readout_flip > 0.0) {
        for (std::size_t b = 0; b < n_meas; ++b) {
          if (prng.uniform() < noise.readout_flip) {
            outcome ^= std::uint64_t{1} << b;
          }
        }
      }
      ++counts[outcome];
    }
  });

  std::vector<std::uint64_t> counts(std::size_t{1} << n_meas, 0);
  for (const auto& c : chunk_counts) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += c[i];
  }
  MeasurementDistribution dist;
  dist.shots = shots;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      dist.probabilities[bits_to_key(i, n_meas)] =
          static_cast<double>(counts[i]) / static_cast<double>(shots);
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Executors
// ---------------------------------------------------------------------------

Executor make_ideal_executor(const SimOptions& options) {
  return [options](const Circuit& circuit, std::uint64_t shots,
                   std::uint64_t seed) {
    MeasurementDistribution dist = simulate_ideal(circuit, options);
    if (shots > 0) dist = sample(dist, shots, seed);
    return dist;
  };
}

Executor make_noisy_executor(const NoiseModel& noise, const SimOptions& options) {
  noise.validate();
  return [noise, options](const Circuit& circuit, std::uint64_t shots,
                          std::uint64_t seed) {
    if (noise.is_zero()) {
      MeasurementDistribution dist = simulate_ideal(circuit, options);
      if (shots > 0) dist = sample(dist, shots, seed);
      return dist;
    }
    if (circuit.n_qubits <= options.dm_max_qubits) {
      MeasurementDistribution dist = simulate_noisy(circuit, noise, options);
      if (shots > 0) dist = sample(dist, shots, seed);
      return dist;
    }
    require(shots > 0, errc::capacity,
            "analytic noisy simulation unavailable at this size; use shots > 0");
    return simulate_trajectories(circuit, noise, shots, seed, options);
  };
}

}  // namespace qemr
