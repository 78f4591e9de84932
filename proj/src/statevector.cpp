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

#include "qemr/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qemr {

namespace {
constexpr cdouble kI{0.0, 1.0};
}  // namespace

std::array<cdouble, 4> gate_matrix_1q(const Gate& gate) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  switch (gate.kind) {
    case GateKind::H:
      return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::SX:
      return {cdouble(0.5, 0.5), cdouble(0.5, -0.5), cdouble(0.5, -0.5),
              cdouble(0.5, 0.5)};
    case GateKind::SXdg:
      return {cdouble(0.5, -0.5), cdouble(0.5, 0.5), cdouble(0.5, 0.5),
              cdouble(0.5, -0.5)};
    case GateKind::S:
      return {1.0, 0.0, 0.0, kI};
    case GateKind::Sdg:
      return {1.0, 0.0, 0.0, -kI};
    case GateKind::Rz: {
      const cdouble p = std::exp(kI * (gate.angle / 2.0));
      return {std::conj(p), 0.0, 0.0, p};
    }
    case GateKind::StatePrep:
      // SU(2) completion of the prepared column.
      return {gate.alpha, -std::conj(gate.beta), gate.beta, std::conj(gate.alpha)};
    default:
      fail(errc::unsupported_gate,
           std::string(gate_name(gate.kind)) + " is not a one-qubit unitary");
  }
}

StateVector::StateVector(std::uint32_t n_qubits) : n_(n_qubits) {
  require(n_ <= 26, errc::capacity, "statevector limited to 26 qubits");
  amps_.assign(std::size_t{1} << n_, cdouble{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::reset() {
  std::fill(amps_.begin(), amps_.end(), cdouble{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::apply_1q(std::uint32_t q, const std::array<cdouble, 4>& u) {
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t low = mask - 1;
  const std::size_t pairs = amps_.size() >> 1;
  for (std::size_t g = 0; g < pairs; ++g) {
    const std::size_t i0 = ((g & ~low) << 1) | (g & low);
    const std::size_t i1 = i0 | mask;
    const cdouble a0 = amps_[i0];
    const cdouble a1 = amps_[i1];
    amps_[i0] = u[0] * a0 + u[1] * a1;
    amps_[i1] = u[2] * a0 + u[3] * a1;
  }
}

void StateVector::apply_diag(std::uint32_t q, cdouble d0, cdouble d1) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    amps_[i] *= (i & mask) ? d1 : d0;
  }
}

void StateVector::apply_x(std::uint32_t q) {
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t low = mask - 1;
  const std::size_t pairs = amps_.size() >> 1;
  for (std::size_t g = 0; g < pairs; ++g) {
    const std::size_t i0 = ((g & ~low) << 1) | (g & low);
    std::swap(amps_[i0], amps_[i0 | mask]);
  }
}

void StateVector::apply_cx(std::uint32_t control, std::uint32_t target) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(amps_[i], amps_[i | tmask]);
  }
}

void StateVector::apply_cswap(std::uint32_t control, std::uint32_t a,
                              std::uint32_t b) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t amask = std::size_t{1} << a;
  const std::size_t bmask = std::size_t{1} << b;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cmask) && (i & amask) && !(i & bmask)) {
      std::swap(amps_[i], amps_[(i & ~amask) | bmask]);
    }
  }
}

void StateVector::apply_pauli(std::uint32_t q, int p) {
  switch (p) {
    case 0:
      return;
    case 1:
      apply_x(q);
      return;
    case 2:
      apply_diag(q, 1.0, -1.0);  // Y = iXZ; the phase i is global
      apply_x(q);
      return;
    case 3:
      apply_diag(q, 1.0, -1.0);
      return;
    default:
      fail(errc::internal, "pauli index out of range");
  }
}

void StateVector::apply(const Gate& gate) {
  switch (gate.kind) {
    case GateKind::CX:
      apply_cx(gate.targets[0], gate.targets[1]);
      return;
    case GateKind::CSwap:
      apply_cswap(gate.targets[0], gate.targets[1], gate.targets[2]);
      return;
    case GateKind::X:
      apply_x(gate.targets[0]);
      return;
    case GateKind::Rz: {
      const cdouble p = std::exp(kI * (gate.angle / 2.0));
      apply_diag(gate.targets[0], std::conj(p), p);
      return;
    }
    case GateKind::S:
      apply_diag(gate.targets[0], 1.0, kI);
      return;
    case GateKind::Sdg:
      apply_diag(gate.targets[0], 1.0, -kI);
      return;
    case GateKind::Measure:
      fail(errc::precondition, "Measure is not a unitary gate");
    default:
      apply_1q(gate.targets[0], gate_matrix_1q(gate));
      return;
  }
}

void StateVector::apply_unitaries(const Circuit& circuit) {
  for (const Gate& g : circuit.gates) {
    if (g.is_unitary()) apply(g);
  }
}

std::vector<double> StateVector::marginal(
    const std::vector<std::uint32_t>& qubits) const {
  const std::size_t out_dim = std::size_t{1} << qubits.size();
  std::vector<double> out(out_dim, 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const double p = std::norm(amps_[i]);
    if (p == 0.0) continue;
    std::size_t key = 0;
    for (std::size_t b = 0; b < qubits.size(); ++b) {
      key |= ((i >> qubits[b]) & 1u) << b;
    }
    out[key] += p;
  }
  return out;
}

double StateVector::overlap2(const StateVector& a, const StateVector& b) {
  require(a.dim() == b.dim(), errc::invalid_argument, "dimension mismatch");
  cdouble dot{0.0, 0.0};
  for (std::size_t i = 0; i < a.amps_.size(); ++i) {
    dot += std::conj(a.amps_[i]) * b.amps_[i];
  }
  return std::norm(dot);
}

std::string bits_to_key(std::uint64_t bits, std::size_t n) {
  std::string key(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if ((bits >> i) & 1u) key[i] = '1';
  }
  return key;
}

std::uint64_t key_to_bits(const std::string& key) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] == '1') bits |= std::uint64_t{1} << i;
  }
  return bits;
}

}  // namespace qemr
