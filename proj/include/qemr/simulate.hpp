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

#ifndef QEMR_SIMULATE_HPP_
#define QEMR_SIMULATE_HPP_

#include <cstdint>
#include <functional>

#include "qemr/circuit.hpp"
#include "qemr/density.hpp"
#include "qemr/distribution.hpp"
#include "qemr/noise.hpp"

namespace qemr {

/// Simulation limits and execution knobs.
struct SimOptions {
  std::uint32_t max_qubits = 15;      // hard cap for any simulation
  std::uint32_t dm_max_qubits = 12;   // density-matrix backend cap
  unsigned threads = 1;               // worker threads for trajectory batches
};

/// Exact Born-rule probabilities of the measured qubits (shots = 0). Any
/// basis rotation is expected to be present as explicit gates, so measurement
/// itself is a computational-basis readout.
MeasurementDistribution simulate_ideal(const Circuit& circuit,
                                       const SimOptions& options = {});

/// Density-matrix evolution: each gate unitary is followed by a local
/// depolarizing channel on its targets (p1 one-qubit, p2 otherwise), then the
/// optional global depolarizing mix, then per-qubit readout flips. Returns
/// analytic probabilities (shots = 0). Capacity-limited by dm_max_qubits.
MeasurementDistribution simulate_noisy(const Circuit& circuit,
                                       const NoiseModel& noise,
                                       const SimOptions& options = {});

/// Monte-Carlo counterpart of simulate_noisy for circuits too wide for a
/// density matrix: per shot, gate-site depolarizing faults are sampled as
/// uniform Pauli insertions and one outcome is drawn from the resulting
/// state. Returns empirical probabilities with the given shot count.
MeasurementDistribution simulate_trajectories(const Circuit& circuit,
                                              const NoiseModel& noise,
                                              std::uint64_t shots,
                                              std::uint64_t seed,
                                              const SimOptions& options = {});

/// Full noisy density operator before measurement (no readout flips), used
/// by state-level checks. Same capacity limits as simulate_noisy.
DensityMatrix noisy_state(const Circuit& circuit, const NoiseModel& noise,
                          const SimOptions& options = {});

/// Backend contract shared by everything that runs circuits: given a circuit,
/// a shot count (0 = analytic) and a seed, produce a distribution.
using Executor =
    std::function<MeasurementDistribution(const Circuit&, std::uint64_t shots,
                                          std::uint64_t seed)>;

/// Noiseless executor: simulate_ideal, sampled when shots > 0.
Executor make_ideal_executor(const SimOptions& options = {});

/// Noisy executor: density matrix + multinomial sampling up to
/// dm_max_qubits, trajectory sampling beyond (which requires shots > 0).
Executor make_noisy_executor(const NoiseModel& noise,
                             const SimOptions& options = {});

/// Deterministic parallel map: fn(i) for i in [0, n), results in index
/// order regardless of the thread count.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace qemr

#endif  // QEMR_SIMULATE_HPP_
