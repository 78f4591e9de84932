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

#ifndef QEMR_TRANSPILE_HPP_
#define QEMR_TRANSPILE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "qemr/circuit.hpp"

namespace qemr {

/// Rewrites a circuit over the basis {Rz, SX, X, CX} (plus Measure), leaving
/// the noiseless state unchanged up to global phase. Idempotent. SXdg, which
/// folding introduces, lowers to Rz(-pi) SX Rz(pi).
Circuit transpile(const Circuit& circuit);

/// True when the circuit contains only basis-level gates (the transpile
/// target set plus SXdg) and Measure.
bool is_basis_level(const Circuit& circuit);

/// Clifford test. Rz counts as Clifford when its angle is a multiple of pi/2
/// within 1e-9 after reduction mod 2pi. CSwap and generic StatePrep are not
/// Clifford; the other fixed gates are.
bool is_clifford(const Gate& gate);

/// Multiple of pi/2 nearest to phi after reduction mod 2pi; exact ties round
/// toward the larger angle.
double nearest_clifford(double phi);

/// Independently snaps each non-Clifford Rz angle to the nearest multiple of
/// pi/2 with probability p_convert. Gate count, order and targets are
/// preserved. Deterministic given the seed. Requires a basis-level circuit.
Circuit make_near_clifford(const Circuit& circuit, double p_convert,
                           std::uint64_t seed);

enum class FoldMode { gate, circuit };

/// Record of how a circuit was noise-scaled.
struct FoldingPlan {
  FoldMode mode = FoldMode::circuit;
  std::uint64_t xi = 0;                // whole-circuit passes (circuit mode)
  std::vector<std::size_t> selected;   // folded gate positions (gate mode)
  double achieved_lambda = 1.0;        // folded unitary count / original count
};

/// Inverse of a single basis-level gate, itself a single gate.
Gate inverse_gate(const Gate& gate);

/// Noise scaling by unitary folding. Circuit mode appends xi copies of the
/// inverted-then-replayed unitary body, reaching lambda = 2*xi + 1 exactly.
/// Gate mode replaces s uniformly chosen gates g by [g, inv(g), g] (one fold
/// per selected gate per pass), reaching lambda = (K + 2s) / K. The achieved
/// lambda is the attainable value nearest to target_lambda, ties rounding up.
/// Measure gates are never folded. Requires a basis-level circuit and
/// target_lambda >= 1.
std::pair<Circuit, FoldingPlan> fold(const Circuit& circuit, double target_lambda,
                                     FoldMode mode, std::uint64_t seed);

}  // namespace qemr

#endif  // QEMR_TRANSPILE_HPP_
