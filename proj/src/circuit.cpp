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

#include "qemr/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace qemr {

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::SX: return "SX";
    case GateKind::SXdg: return "SXDG";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::Rz: return "RZ";
    case GateKind::CX: return "CX";
    case GateKind::CSwap: return "CSWAP";
    case GateKind::StatePrep: return "STATEPREP";
    case GateKind::Measure: return "MEASURE";
  }
  return "?";
}

const char* basis_name(Basis basis) {
  switch (basis) {
    case Basis::X: return "X";
    case Basis::Y: return "Y";
    case Basis::Z: return "Z";
  }
  return "?";
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CX: return 2;
    case GateKind::CSwap: return 3;
    default: return 1;
  }
}

Gate Gate::simple(GateKind kind, std::vector<std::uint32_t> targets) {
  Gate g;
  g.kind = kind;
  g.targets = std::move(targets);
  return g;
}

Gate Gate::rz(std::uint32_t q, double phi) {
  Gate g = simple(GateKind::Rz, {q});
  g.angle = phi;
  return g;
}

Gate Gate::cx(std::uint32_t control, std::uint32_t target) {
  return simple(GateKind::CX, {control, target});
}

Gate Gate::cswap(std::uint32_t control, std::uint32_t a, std::uint32_t b) {
  return simple(GateKind::CSwap, {control, a, b});
}

Gate Gate::state_prep(std::uint32_t q, cdouble alpha, cdouble beta) {
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  require(norm > 1e-12, errc::invalid_argument,
          "state_prep amplitudes must not both vanish");
  Gate g = simple(GateKind::StatePrep, {q});
  g.alpha = alpha / norm;
  g.beta = beta / norm;
  return g;
}

Gate Gate::measure(std::uint32_t q, Basis basis) {
  Gate g = simple(GateKind::Measure, {q});
  g.basis = basis;
  return g;
}

void Gate::validate(std::uint32_t n_qubits) const {
  const int arity = gate_arity(kind);
  require(static_cast<int>(targets.size()) == arity, errc::invalid_argument,
          std::string(gate_name(kind)) + " expects " + std::to_string(arity) +
              " target(s)");
  std::set<std::uint32_t> distinct(targets.begin(), targets.end());
  require(distinct.size() == targets.size(), errc::invalid_argument,
          std::string(gate_name(kind)) + " targets must be distinct");
  for (std::uint32_t q : targets) {
    require(q < n_qubits, errc::invalid_argument,
            "gate target " + std::to_string(q) + " out of range for " +
                std::to_string(n_qubits) + " qubits");
  }
  if (kind == GateKind::StatePrep) {
    require(std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= 1e-12,
            errc::invalid_argument, "state_prep amplitudes not normalized");
  }
}

Circuit& Circuit::add(Gate gate) {
  gate.validate(n_qubits);
  if (gate.is_unitary() && !gates.empty() && !gates.back().is_unitary()) {
    fail(errc::invalid_argument, "unitary gate after a Measure gate");
  }
  gates.push_back(std::move(gate));
  return *this;
}

std::size_t Circuit::unitary_gate_count() const {
  std::size_t n = 0;
  for (const Gate& g : gates) n += g.is_unitary() ? 1 : 0;
  return n;
}

std::vector<std::uint32_t> Circuit::measured_qubits() const {
  std::vector<std::uint32_t> out;
  for (const Gate& g : gates) {
    if (g.kind == GateKind::Measure) out.push_back(g.targets[0]);
  }
  return out;
}

std::vector<Basis> Circuit::measurement_bases() const {
  std::vector<Basis> out;
  for (const Gate& g : gates) {
    if (g.kind == GateKind::Measure) out.push_back(g.basis);
  }
  return out;
}

Circuit Circuit::unitary_part() const {
  Circuit out(n_qubits);
  for (const Gate& g : gates) {
    if (g.is_unitary()) out.gates.push_back(g);
  }
  return out;
}

void Circuit::validate() const {
  bool seen_measure = false;
  std::set<std::uint32_t> measured;
  for (const Gate& g : gates) {
    g.validate(n_qubits);
    if (g.kind == GateKind::Measure) {
      seen_measure = true;
      require(measured.insert(g.targets[0]).second, errc::invalid_argument,
              "qubit " + std::to_string(g.targets[0]) + " measured twice");
    } else {
      require(!seen_measure, errc::invalid_argument,
              "unitary gate after a Measure gate");
    }
  }
}

namespace {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_double(const std::string& token, int line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(token, &pos);
    require(pos == token.size(), errc::parse,
            "line " + std::to_string(line_no) + ": bad number '" + token + "'");
    return v;
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    fail(errc::parse,
         "line " + std::to_string(line_no) + ": bad number '" + token + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.n_qubits << "\n";
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::Measure) {
      out << "measure " << g.targets[0] << " " << basis_name(g.basis) << "\n";
      continue;
    }
    out << gate_name(g.kind) << " ";
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
      if (i) out << ",";
      out << g.targets[i];
    }
    if (g.kind == GateKind::Rz) {
      out << " @" << format_double(g.angle);
    } else if (g.kind == GateKind::StatePrep) {
      out << " @" << format_double(g.alpha.real()) << ","
          << format_double(g.alpha.imag()) << "," << format_double(g.beta.real())
          << "," << format_double(g.beta.imag());
    }
    out << "\n";
  }
  return out.str();
}

Circuit from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  Circuit circuit;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;  // blank line
    if (word[0] == '#') continue;
    if (!have_header) {
      require(word == "qubits", errc::parse,
              "line " + std::to_string(line_no) + ": expected 'qubits N' header");
      std::string count;
      require(static_cast<bool>(ls >> count), errc::parse,
              "line " + std::to_string(line_no) + ": missing qubit count");
      circuit.n_qubits =
          static_cast<std::uint32_t>(parse_double(count, line_no));
      have_header = true;
      continue;
    }
    if (word == "measure") {
      std::string q, basis;
      require(static_cast<bool>(ls >> q >> basis), errc::parse,
              "line " + std::to_string(line_no) + ": measure needs qubit and basis");
      Basis b = Basis::Z;
      if (basis == "X") b = Basis::X;
      else if (basis == "Y") b = Basis::Y;
      else if (basis == "Z") b = Basis::Z;
      else fail(errc::parse, "line " + std::to_string(line_no) + ": bad basis '" + basis + "'");
      circuit.add(Gate::measure(
          static_cast<std::uint32_t>(parse_double(q, line_no)), b));
      continue;
    }

    std::string targets_token;
    require(static_cast<bool>(ls >> targets_token), errc::parse,
            "line " + std::to_string(line_no) + ": missing targets");
    std::vector<std::uint32_t> targets;
    for (const std::string& t : split(targets_token, ',')) {
      targets.push_back(static_cast<std::uint32_t>(parse_double(t, line_no)));
    }
    std::string params_token;
    bool have_params = static_cast<bool>(ls >> params_token);
    if (have_params) {
      require(!params_token.empty() && params_token[0] == '@', errc::parse,
              "line " + std::to_string(line_no) + ": parameters must start with '@'");
      params_token.erase(0, 1);
    }

    Gate gate;
    if (word == "H") gate = Gate::h(targets.at(0));
    else if (word == "X") gate = Gate::x(targets.at(0));
    else if (word == "SX") gate = Gate::sx(targets.at(0));
    else if (word == "SXDG") gate = Gate::sxdg(targets.at(0));
    else if (word == "S") gate = Gate::s(targets.at(0));
    else if (word == "SDG") gate = Gate::sdg(targets.at(0));
    else if (word == "RZ") {
      require(have_params, errc::parse,
              "line " + std::to_string(line_no) + ": RZ needs an angle");
      gate = Gate::rz(targets.at(0), parse_double(params_token, line_no));
    } else if (word == "CX") {
      require(targets.size() == 2, errc::parse,
              "line " + std::to_string(line_no) + ": CX needs two targets");
      gate = Gate::cx(targets[0], targets[1]);
    } else if (word == "CSWAP") {
      require(targets.size() == 3, errc::parse,
              "line " + std::to_string(line_no) + ": CSWAP needs three targets");
      gate = Gate::cswap(targets[0], targets[1], targets[2]);
    } else if (word == "STATEPREP") {
      require(have_params, errc::parse,
              "line " + std::to_string(line_no) + ": STATEPREP needs amplitudes");
      std::vector<std::string> parts = split(params_token, ',');
      require(parts.size() == 4, errc::parse,
              "line " + std::to_string(line_no) +
                  ": STATEPREP needs four amplitude components");
      gate = Gate::state_prep(
          targets.at(0),
          cdouble(parse_double(parts[0], line_no), parse_double(parts[1], line_no)),
          cdouble(parse_double(parts[2], line_no), parse_double(parts[3], line_no)));
    } else {
      fail(errc::parse,
           "line " + std::to_string(line_no) + ": unknown gate '" + word + "'");
    }
    circuit.add(std::move(gate));
  }
  require(have_header, errc::parse, "missing 'qubits N' header");
  circuit.validate();
  return circuit;
}

}  // namespace qemr
