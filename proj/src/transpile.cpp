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

#include "qemr/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qemr/rng.hpp"

namespace qemr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-9;

bool is_basis_gate(GateKind kind) {
  switch (kind) {
    case GateKind::Rz:
    case GateKind::SX:
    case GateKind::X:
    case GateKind::CX:
      return true;
    default:
      return false;
  }
}

void emit_h(Circuit& out, std::uint32_t q) {
  out.add(Gate::rz(q, kPi / 2));
  out.add(Gate::sx(q));
  out.add(Gate::rz(q, kPi / 2));
}

void emit_t(Circuit& out, std::uint32_t q) { out.add(Gate::rz(q, kPi / 4)); }
void emit_tdg(Circuit& out, std::uint32_t q) { out.add(Gate::rz(q, -kPi / 4)); }

// Standard 6-CX Toffoli network; T gates realized as Rz(pi/4) up to global
// phase, H as its basis decomposition.
void emit_toffoli(Circuit& out, std::uint32_t c1, std::uint32_t c2,
                  std::uint32_t t) {
  emit_h(out, t);
  out.add(Gate::cx(c2, t));
  emit_tdg(out, t);
  out.add(Gate::cx(c1, t));
  emit_t(out, t);
  out.add(Gate::cx(c2, t));
  emit_tdg(out, t);
  out.add(Gate::cx(c1, t));
  emit_t(out, c2);
  emit_t(out, t);
  emit_h(out, t);
  out.add(Gate::cx(c1, c2));
  emit_t(out, c1);
  emit_tdg(out, c2);
  out.add(Gate::cx(c1, c2));
}

// Euler sequence Rz(lam) SX Rz(theta+pi) SX Rz(phi-pi), in time order, equal
// to the StatePrep unitary up to global phase. The angles come from matching
// Rz(phi) Ry(theta) Rz(lam) against the SU(2) completion of (alpha, beta).
void emit_state_prep(Circuit& out, const Gate& g) {
  const std::uint32_t q = g.targets[0];
  const double ra = std::abs(g.alpha);
  const double rb = std::abs(g.beta);
  const double pa = std::arg(g.alpha);
  const double pb = std::arg(g.beta);
  const double theta = 2.0 * std::atan2(rb, ra);
  const double phi = pb - pa;
  const double lam = -(pa + pb);
  out.add(Gate::rz(q, lam));
  out.add(Gate::sx(q));
  out.add(Gate::rz(q, theta + kPi));
  out.add(Gate::sx(q));
  out.add(Gate::rz(q, phi - kPi));
}

void transpile_gate(Circuit& out, const Gate& g) {
  switch (g.kind) {
    case GateKind::Rz:
    case GateKind::SX:
    case GateKind::X:
    case GateKind::CX:
    case GateKind::Measure:
      out.add(g);
      return;
    case GateKind::H:
      emit_h(out, g.targets[0]);
      return;
    case GateKind::S:
      out.add(Gate::rz(g.targets[0], kPi / 2));
      return;
    case GateKind::Sdg:
      out.add(Gate::rz(g.targets[0], -kPi / 2));
      return;
    case GateKind::SXdg:
      out.add(Gate::rz(g.targets[0], -kPi));
      out.add(Gate::sx(g.targets[0]));
      out.add(Gate::rz(g.targets[0], kPi));
      return;
    case GateKind::StatePrep:
      emit_state_prep(out, g);
      return;
    case GateKind::CSwap: {
      // Fredkin via CX-sandwiched Toffoli.
      const std::uint32_t c = g.targets[0];
      const std::uint32_t a = g.targets[1];
      const std::uint32_t b = g.targets[2];
      out.add(Gate::cx(b, a));
      emit_toffoli(out, c, a, b);
      out.add(Gate::cx(b, a));
      return;
    }
  }
  fail(errc::unsupported_gate, "cannot transpile unknown gate kind");
}

}  // namespace

Circuit transpile(const Circuit& circuit) {
  circuit.validate();
  Circuit out(circuit.n_qubits);
  for (const Gate& g : circuit.gates) transpile_gate(out, g);
  return out;
}

bool is_basis_level(const Circuit& circuit) {
  return std::all_of(circuit.gates.begin(), circuit.gates.end(), [](const Gate& g) {
    return is_basis_gate(g.kind) || g.kind == GateKind::SXdg ||
           g.kind == GateKind::Measure;
  });
}

double nearest_clifford(double phi) {
  const double two_pi = 2.0 * kPi;
  double reduced = std::fmod(phi, two_pi);
  if (reduced < 0) reduced += two_pi;
  // Half-up rounding realizes the tie rule: exact pi/4 distances go to the
  // larger multiple.
  double k = std::floor(reduced / (kPi / 2) + 0.5);
  double snapped = k * (kPi / 2);
  if (snapped >= two_pi - kAngleTol) snapped -= two_pi;
  return snapped;
}

bool is_clifford(const Gate& gate) {
  switch (gate.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::SX:
    case GateKind::SXdg:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::CX:
    case GateKind::Measure:
      return true;
    case GateKind::Rz: {
      const double two_pi = 2.0 * kPi;
      double reduced = std::fmod(gate.angle, two_pi);
      if (reduced < 0) reduced += two_pi;
      double remainder = std::fmod(reduced, kPi / 2);
      return remainder <= kAngleTol || remainder >= kPi / 2 - kAngleTol;
    }
    case GateKind::CSwap:
    case GateKind::StatePrep:
      return false;
  }
  return false;
}

Circuit make_near_clifford(const Circuit& circuit, double p_convert,
                           std::uint64_t seed) {
  require(p_convert >= 0.0 && p_convert <= 1.0, errc::precondition,
          "p_convert must lie in [0, 1]");
  require(is_basis_level(circuit), errc::precondition,
          "make_near_clifford requires a transpiled circuit");
  Prng prng(derive_seed(seed, {0x6e63}));
  Circuit out(circuit.n_qubits);
  out.gates.reserve(circuit.gates.size());
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::Rz && !is_clifford(g) && prng.uniform() < p_convert) {
      out.gates.push_back(Gate::rz(g.targets[0], nearest_clifford(g.angle)));
    } else {
      out.gates.push_back(g);
    }
  }
  return out;
}

Gate inverse_gate(const Gate& gate) {
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::CX:
      return gate;
    case GateKind::Rz:
      return Gate::rz(gate.targets[0], -gate.angle);
    case GateKind::SX:
      return Gate::sxdg(gate.targets[0]);
    case GateKind::SXdg:
      return Gate::sx(gate.targets[0]);
    default:
      fail(errc::precondition,
           std::string("no single-gate inverse for ") + gate_name(gate.kind));
  }
}

std::pair<Circuit, FoldingPlan> fold(const Circuit& circuit, double target_lambda,
                                     FoldMode mode, std::uint64_t seed) {
  require(target_lambda >= 1.0, errc::precondition, "target_lambda must be >= 1");
  require(is_basis_level(circuit), errc::precondition,
          "fold requires a transpiled circuit");

  Circuit body = circuit.unitary_part();
  const std::size_t k = body.gates.size();
  FoldingPlan plan;
  plan.mode = mode;

  Circuit folded(circuit.n_qubits);
  if (mode == FoldMode::circuit || k == 0) {
    const std::uint64_t xi =
        k == 0 ? 0 : static_cast<std::uint64_t>(std::llround((target_lambda - 1.0) / 2.0));
    plan.mode = FoldMode::circuit;
    plan.xi = xi;
    plan.achieved_lambda = static_cast<double>(2 * xi + 1);
    folded.gates = body.gates;
    for (std::uint64_t pass = 0; pass < xi; ++pass) {
      for (auto it = body.gates.rbegin(); it != body.gates.rend(); ++it) {
        folded.gates.push_back(inverse_gate(*it));
      }
      for (const Gate& g : body.gates) folded.gates.push_back(g);
    }
  } else {
    std::uint64_t s = static_cast<std::uint64_t>(
        std::llround((target_lambda - 1.0) * static_cast<double>(k) / 2.0));
    plan.xi = 1;
    plan.achieved_lambda =
        static_cast<double>(k + 2 * s) / static_cast<double>(k);
    Prng prng(derive_seed(seed, {0x666f6c64}));
    folded.gates = body.gates;
    std::uint64_t remaining = s;
    while (remaining > 0) {
      const std::size_t count = folded.gates.size();
      const std::size_t pick =
          static_cast<std::size_t>(std::min<std::uint64_t>(remaining, count));
      std::vector<std::size_t> chosen =
          prng.sample_without_replacement(count, pick);
      std::sort(chosen.begin(), chosen.end());
      for (std::size_t idx : chosen) plan.selected.push_back(idx);
      // Insert back-to-front so earlier indices stay valid.
      std::vector<Gate> next;
      next.reserve(count + 2 * pick);
      std::size_t ci = 0;
      for (std::size_t i = 0; i < count; ++i) {
        next.push_back(folded.gates[i]);
        if (ci < chosen.size() && chosen[ci] == i) {
          next.push_back(inverse_gate(folded.gates[i]));
          next.push_back(folded.gates[i]);
          ++ci;
        }
      }
      folded.gates = std::move(next);
      remaining -= pick;
    }
  }

  for (const Gate& g : circuit.gates) {
    if (!g.is_unitary()) folded.gates.push_back(g);
  }
  folded.validate();
  return {std::move(folded), std::move(plan)};
}

}  // namespace qemr
