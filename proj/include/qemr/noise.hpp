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

#ifndef QEMR_NOISE_HPP_
#define QEMR_NOISE_HPP_

#include <string>

#include "qemr/error.hpp"

namespace qemr {

/// Stochastic device model: a local depolarizing channel after every gate
/// (p1 on one-qubit gates, p2 on wider ones), an optional global depolarizing
/// mix applied once per circuit, and an independent classical bit flip on
/// each measured qubit.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  double readout_flip = 0.0;
  double global_eps = 0.0;

  bool is_zero() const {
    return p1 == 0.0 && p2 == 0.0 && readout_flip == 0.0 && global_eps == 0.0;
  }

  void validate() const {
    for (double p : {p1, p2, readout_flip, global_eps}) {
      require(p >= 0.0 && p <= 1.0, errc::invalid_argument,
              "noise probabilities must lie in [0, 1]");
    }
  }

  std::string to_json() const;
  static NoiseModel from_json(const std::string& text);

  /// Named presets: "none" (all zero), "light", and "bench", the calibrated
  /// model used for the routing benchmark.
  static NoiseModel preset(const std::string& name);
};

}  // namespace qemr

#endif  // QEMR_NOISE_HPP_
