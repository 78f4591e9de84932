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

#ifndef QEMR_DISTRIBUTION_HPP_
#define QEMR_DISTRIBUTION_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qemr/circuit.hpp"

namespace qemr {

/// Probabilities over measured-qubit bitstrings. Character i of a key is the
/// outcome of the i-th measured qubit. shots == 0 marks an analytic
/// (infinite-shot) distribution; otherwise the empirical sample size.
struct MeasurementDistribution {
  std::map<std::string, double> probabilities;
  std::uint64_t shots = 0;

  double at(const std::string& key) const {
    auto it = probabilities.find(key);
    return it == probabilities.end() ? 0.0 : it->second;
  }

  double total() const;

  /// Checks entries lie in [0, 1], sum to 1 within 1e-9 and keys share one
  /// length. Throws on violation.
  void validate() const;

  std::string to_json() const;
  static MeasurementDistribution from_json(const std::string& text);
};

/// Total variation distance; missing keys count as zero probability.
double total_variation(const MeasurementDistribution& a,
                       const MeasurementDistribution& b);

/// Product observable with eigenvalues +-1: the eigenvalue of a bitstring is
/// the product over bits of (+1 for 0, -1 for 1). Basis labels record which
/// rotated frame each measured qubit was read in.
struct Observable {
  std::vector<Basis> bases;

  static Observable z_product(std::size_t n) {
    return Observable{std::vector<Basis>(n, Basis::Z)};
  }

  double eigenvalue(const std::string& bitstring) const;
};

/// Sum over outcomes of probability times eigenvalue; lies in [-1, 1].
double expectation(const MeasurementDistribution& dist, const Observable& obs);

/// Multinomial resample: C draws from dist, returned as empirical
/// probabilities with shots = C. Deterministic given the seed.
MeasurementDistribution sample(const MeasurementDistribution& dist,
                               std::uint64_t shots, std::uint64_t seed);

}  // namespace qemr

#endif  // QEMR_DISTRIBUTION_HPP_
