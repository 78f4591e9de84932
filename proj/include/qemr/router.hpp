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

#ifndef QEMR_ROUTER_HPP_
#define QEMR_ROUTER_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qemr/circuit.hpp"
#include "qemr/density.hpp"
#include "qemr/distribution.hpp"

namespace qemr {

/// Layout of a binary routing tree: 2^layers path qubits (ids 0..2^L-1, the
/// signal enters on path 0) and 2^layers - 1 control qubits (ids 2^L..), one
/// per controlled-swap, indexed breadth-first through the tree. A control in
/// |0> leaves its swap inert; an "active" control is prepared in a
/// superposition and routes the signal into both branches.
struct RouterSpec {
  int layers = 1;
  cdouble signal_alpha{1.0, 0.0};
  cdouble signal_beta{0.0, 0.0};

  struct ControlAmp {
    cdouble alpha{1.0, 0.0};
    cdouble beta{0.0, 0.0};
    bool active() const { return std::norm(beta) > 0.0; }
  };
  std::vector<ControlAmp> controls;

  std::uint32_t n_paths() const { return 1u << layers; }
  std::uint32_t n_controls() const { return (1u << layers) - 1; }
  std::uint32_t n_qubits() const { return n_paths() + n_controls(); }
  std::uint32_t control_qubit(std::uint32_t index) const {
    return n_paths() + index;
  }
  std::vector<bool> active_mask() const;

  void validate() const;

  /// All controls in the even superposition (a Hadamard each).
  static RouterSpec standard(int layers, cdouble signal_alpha, cdouble signal_beta);

  /// Only the listed controls active (even superposition); the rest stay |0>.
  static RouterSpec with_active_controls(int layers, cdouble signal_alpha,
                                         cdouble signal_beta,
                                         const std::vector<std::uint32_t>& active);
};

/// `count` distinct control indices drawn by seed, ascending.
std::vector<std::uint32_t> choose_active_controls(int layers, std::uint32_t count,
                                                  std::uint64_t seed);

/// The routing circuit: signal preparation on path 0, control preparations,
/// then the controlled-swap tree layer by layer. No measurements.
Circuit build_router(const RouterSpec& spec);

/// Path index (0-based) holding the signal, given the measured outcomes of
/// the active controls in ascending control-index order. Inactive controls
/// count as 0.
std::uint32_t path_of(const std::string& control_bits, int layers,
                      const std::vector<bool>& active);

/// Human-readable "L-k" path label (1-based k).
std::string path_label(int layers, std::uint32_t path_index);

/// Path indices a signal can reach under the given active-control mask.
std::vector<std::uint32_t> reachable_paths(int layers,
                                           const std::vector<bool>& active);

/// Bit layout of tomography results: active controls first (ascending), then
/// reachable path qubits (ascending).
struct TomographyLayout {
  int layers = 1;
  std::vector<bool> active;
  std::vector<std::uint32_t> measured_controls;  // qubit ids
  std::vector<std::uint32_t> measured_paths;     // path ids == qubit ids
};

/// Three copies of the routing circuit that differ only in the
/// pre-measurement rotation on every measured path qubit: none (Z), H (X), or
/// Sdg then H (Y). Controls are always read in Z.
struct TomographySet {
  std::array<Circuit, 3> circuits;  // order: Z, X, Y
  TomographyLayout layout;
};

TomographySet tomography_circuits(const RouterSpec& spec);

/// Bloch parameters of the reconstructed signal qubit; s0 is fixed at 1 by
/// normalization.
struct BlochParams {
  double s0 = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

/// Post-selects the signal-carrying path qubit. For every control outcome the
/// signal path's conditional marginal is pooled with the branch probability
/// as weight, which reduces to summing joint probabilities; branches of zero
/// probability contribute nothing.
BlochParams post_select(const std::array<MeasurementDistribution, 3>& results,
                        const TomographyLayout& layout);

/// rho' = (s0 I + s1 X + s2 Y + s3 Z) / 2, projected to the nearest
/// PSD trace-one matrix when shot noise or mitigation pushed an eigenvalue
/// below zero.
DensityMatrix reconstruct(const BlochParams& bloch);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) rho' sqrt(rho)))^2. Inputs must be
/// valid density matrices; equals <phi|rho'|phi> for pure rho = |phi><phi|.
double fidelity(const DensityMatrix& rho, const DensityMatrix& rho_prime);

/// {"S": [...], "rho_prime": [[re, im] x 4 row-major], "fidelity": f}
std::string qst_result_json(const BlochParams& bloch, const DensityMatrix& rho_prime,
                            double fidelity_value);

}  // namespace qemr

#endif  // QEMR_ROUTER_HPP_
