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

#ifndef QEMR_DENSITY_HPP_
#define QEMR_DENSITY_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qemr/circuit.hpp"

namespace qemr {

/// Hermitian, trace-one complex matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd m);

  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::MatrixXcd& matrix() { return m_; }

  /// Hermiticity and unit trace within tol; optionally eigenvalues >= -tol.
  void validate(double tol = 1e-10, bool check_psd = false) const;

 private:
  Eigen::MatrixXcd m_;
};

/// rho -> (1-eps)^j rho + (1 - (1-eps)^j) I/d, the j-fold global
/// depolarizing channel.
DensityMatrix apply_global_depolarizing(const DensityMatrix& rho, double eps,
                                        std::uint64_t applications);

}  // namespace qemr

#endif  // QEMR_DENSITY_HPP_
