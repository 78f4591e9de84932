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

#ifndef QEMR_REGRESSION_HPP_
#define QEMR_REGRESSION_HPP_

#include <cstddef>
#include <utility>
#include <vector>

namespace qemr {

/// Affine map from noisy to noiseless values: predicted = a * noisy + b.
struct RegressionModel {
  double a = 1.0;
  double b = 0.0;
  double residual_sum = 0.0;  // sum of squared residuals at the optimum
  std::size_t n_points = 0;

  double apply(double noisy) const { return a * noisy + b; }
};

/// Ordinary least squares over (noisy, noiseless) pairs. Needs >= 2 pairs and
/// non-constant noisy values; throws singular_fit otherwise.
RegressionModel fit_linear(const std::vector<std::pair<double, double>>& pairs);

/// f(x) = c0 + c1 x + c2 x^2.
struct QuadraticModel {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double eval(double x) const { return c0 + x * (c1 + x * c2); }
};

/// Least-squares quadratic over (x, value) points. Needs >= 3 distinct x;
/// with exactly 3 it interpolates. Throws singular_fit when underdetermined.
QuadraticModel fit_quadratic(const std::vector<std::pair<double, double>>& points);

/// Weights w such that evaluating the interpolating polynomial of degree
/// n-1 at x equals sum_i w_i * f(x_i). Requires distinct nodes.
std::vector<double> lagrange_weights(const std::vector<double>& nodes, double x);

}  // namespace qemr

#endif  // QEMR_REGRESSION_HPP_
