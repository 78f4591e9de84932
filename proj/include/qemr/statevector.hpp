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

#ifndef QEMR_STATEVECTOR_HPP_
#define QEMR_STATEVECTOR_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "qemr/circuit.hpp"

namespace qemr {

/// 2x2 unitary of a single-qubit gate kind, row-major {u00, u01, u10, u11}.
std::array<cdouble, 4> gate_matrix_1q(const Gate& gate);

/// Dense pure-state simulator. Qubit q is bit q of the basis-state index.
class StateVector {
 public:
  explicit StateVector(std::uint32_t n_qubits);

  std::uint32_t n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  /// Back to |0...0>.
  void reset();
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  std::vector<cdouble>& amplitudes() { return amps_; }

  void apply(const Gate& gate);
  void apply_unitaries(const Circuit& circuit);

  void apply_1q(std::uint32_t q, const std::array<cdouble, 4>& u);
  void apply_diag(std::uint32_t q, cdouble d0, cdouble d1);
  void apply_x(std::uint32_t q);
  void apply_cx(std::uint32_t control, std::uint32_t target);
  void apply_cswap(std::uint32_t control, std::uint32_t a, std::uint32_t b);
  /// Pauli index p in {0: I, 1: X, 2: Y, 3: Z}.
  void apply_pauli(std::uint32_t q, int p);

  /// Marginal probabilities over the listed qubits: entry m has bit i equal
  /// to the outcome of qubits[i].
  std::vector<double> marginal(const std::vector<std::uint32_t>& qubits) const;

  /// |<a|b>|^2 for normalized states.
  static double overlap2(const StateVector& a, const StateVector& b);

 private:
  std::uint32_t n_;
  std::vector<cdouble> amps_;
};

/// Packed marginal index -> bitstring key ("bit i" is character i).
std::string bits_to_key(std::uint64_t bits, std::size_t n);
std::uint64_t key_to_bits(const std::string& key);

}  // namespace qemr

#endif  // QEMR_STATEVECTOR_HPP_
