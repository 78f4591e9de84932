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

#ifndef QEMR_CIRCUIT_HPP_
#define QEMR_CIRCUIT_HPP_

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qemr/error.hpp"

namespace qemr {

using cdouble = std::complex<double>;

enum class GateKind {
  H,
  X,
  SX,
  SXdg,  // inverse of SX; kept as a first-class gate so folding stays gate-exact
  S,
  Sdg,
  Rz,
  CX,
  CSwap,
  StatePrep,
  Measure,
};

enum class Basis { X, Y, Z };

const char* gate_name(GateKind kind);
const char* basis_name(Basis basis);

/// One circuit operation. Rz carries an angle in radians, StatePrep a
/// renormalized single-qubit amplitude pair, Measure a basis label. The basis
/// label is bookkeeping only: measurement is always a computational-basis
/// readout, with any basis change realized by explicit gates beforehand.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<std::uint32_t> targets;
  double angle = 0.0;
  cdouble alpha{1.0, 0.0};
  cdouble beta{0.0, 0.0};
  Basis basis = Basis::Z;

  static Gate h(std::uint32_t q) { return simple(GateKind::H, {q}); }
  static Gate x(std::uint32_t q) { return simple(GateKind::X, {q}); }
  static Gate sx(std::uint32_t q) { return simple(GateKind::SX, {q}); }
  static Gate sxdg(std::uint32_t q) { return simple(GateKind::SXdg, {q}); }
  static Gate s(std::uint32_t q) { return simple(GateKind::S, {q}); }
  static Gate sdg(std::uint32_t q) { return simple(GateKind::Sdg, {q}); }
  static Gate rz(std::uint32_t q, double phi);
  static Gate cx(std::uint32_t control, std::uint32_t target);
  static Gate cswap(std::uint32_t control, std::uint32_t a, std::uint32_t b);
  /// Amplitudes are renormalized so |alpha|^2 + |beta|^2 = 1 (within 1e-12).
  static Gate state_prep(std::uint32_t q, cdouble alpha, cdouble beta);
  static Gate measure(std::uint32_t q, Basis basis = Basis::Z);

  bool is_unitary() const { return kind != GateKind::Measure; }
  void validate(std::uint32_t n_qubits) const;

 private:
  static Gate simple(GateKind kind, std::vector<std::uint32_t> targets);
};

/// Expected number of targets for a gate kind.
int gate_arity(GateKind kind);

/// Ordered gate list over a fixed qubit register. Measure gates, if any, must
/// come after every unitary gate; the measured-qubit order (and hence the
/// bitstring layout of results) is the order of the Measure gates.
struct Circuit {
  std::uint32_t n_qubits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(std::uint32_t n) : n_qubits(n) {}

  Circuit& add(Gate gate);

  std::size_t unitary_gate_count() const;
  std::vector<std::uint32_t> measured_qubits() const;
  std::vector<Basis> measurement_bases() const;

  /// Copy without the trailing Measure gates.
  Circuit unitary_part() const;

  /// Throws on malformed circuits (bad targets, Measure before a unitary,
  /// duplicate measurement of a qubit).
  void validate() const;
};

/// Line-oriented text form:
///
///   qubits N
///   GATE q0[,q1[,q2]] [@angle]
///   STATEPREP q @are,aim,bre,bim
///   measure q BASIS
///
/// Round-trips are bit-exact: parameters are printed with 17 significant
/// digits and re-serializing a parsed circuit reproduces the input bytes.
std::string to_text(const Circuit& circuit);
Circuit from_text(std::string_view text);

}  // namespace qemr

#endif  // QEMR_CIRCUIT_HPP_
