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

#include "qemr/noise.hpp"

#include <nlohmann/json.hpp>

namespace qemr {

using json = nlohmann::json;

std::string NoiseModel::to_json() const {
  json obj;
  obj["p1"] = p1;
  obj["p2"] = p2;
  obj["readout_flip"] = readout_flip;
  obj["global_eps"] = global_eps;
  return obj.dump();
}

NoiseModel NoiseModel::from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("bad noise JSON: ") + e.what());
  }
  NoiseModel model;
  model.p1 = obj.value("p1", 0.0);
  model.p2 = obj.value("p2", 0.0);
  model.readout_flip = obj.value("readout_flip", 0.0);
  model.global_eps = obj.value("global_eps", 0.0);
  model.validate();
  return model;
}

NoiseModel NoiseModel::preset(const std::string& name) {
  if (name == "none") return NoiseModel{};
  if (name == "light") return NoiseModel{0.0005, 0.003, 0.005, 0.02};
  if (name == "bench") {
    // Calibrated so the 3-layer routing benchmark lands near fidelity 0.5
    // unmitigated, with 1- and 2-layer runs noisy but recoverable.
    return NoiseModel{0.002, 0.014, 0.015, 0.16};
  }
  fail(errc::invalid_argument, "unknown noise preset '" + name + "'");
}

}  // namespace qemr
