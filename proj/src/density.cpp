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

#include "qemr/density.hpp"

#include <cmath>

namespace qemr {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols() && m_.rows() >= 1, errc::invalid_argument,
          "density matrix must be square");
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double n2 = psi.squaredNorm();
  require(n2 > 0.0, errc::invalid_argument, "zero state vector");
  Eigen::MatrixXcd m = (psi * psi.adjoint()) / n2;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  m /= static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

void DensityMatrix::validate(double tol, bool check_psd) const {
  require((m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol, errc::precondition,
          "density matrix is not Hermitian");
  require(std::abs(m_.trace().real() - 1.0) <= tol &&
              std::abs(m_.trace().imag()) <= tol,
          errc::precondition, "density matrix trace differs from 1");
  if (check_psd) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_,
                                                           Eigen::EigenvaluesOnly);
    require(solver.eigenvalues().minCoeff() >= -tol, errc::precondition,
            "density matrix has a negative eigenvalue");
  }
}

DensityMatrix apply_global_depolarizing(const DensityMatrix& rho, double eps,
                                        std::uint64_t applications) {
  require(eps >= 0.0 && eps <= 1.0, errc::invalid_argument,
          "eps must lie in [0, 1]");
  const double keep = std::pow(1.0 - eps, static_cast<double>(applications));
  Eigen::MatrixXcd m = keep * rho.matrix();
  const double fill = (1.0 - keep) / static_cast<double>(rho.dim());
  for (Eigen::Index i = 0; i < rho.dim(); ++i) m(i, i) += fill;
  return DensityMatrix(std::move(m));
}

}  // namespace qemr
