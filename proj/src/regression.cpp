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

#include "qemr/regression.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>

#include "qemr/error.hpp"

namespace qemr {

RegressionModel fit_linear(const std::vector<std::pair<double, double>>& pairs) {
  require(pairs.size() >= 2, errc::singular_fit,
          "linear fit needs at least two points");
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : pairs) {
    require(std::isfinite(x) && std::isfinite(y), errc::numeric,
            "non-finite fit input");
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(pairs.size());
  mean_y /= static_cast<double>(pairs.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
  }
  // Scale-aware degeneracy test: all noisy values (numerically) identical.
  double max_abs_x = 0.0;
  for (const auto& [x, y] : pairs) max_abs_x = std::max(max_abs_x, std::abs(x));
  require(sxx > 1e-24 * std::max(1.0, max_abs_x * max_abs_x) *
                     static_cast<double>(pairs.size()),
          errc::singular_fit, "linear fit is degenerate: noisy values coincide");

  RegressionModel model;
  model.a = sxy / sxx;
  model.b = mean_y - model.a * mean_x;
  model.residual_sum = std::max(0.0, syy - sxy * sxy / sxx);
  model.n_points = pairs.size();
  return model;
}

QuadraticModel fit_quadratic(const std::vector<std::pair<double, double>>& points) {
  std::set<double> distinct;
  for (const auto& [x, y] : points) {
    require(std::isfinite(x) && std::isfinite(y), errc::numeric,
            "non-finite fit input");
    distinct.insert(x);
  }
  require(distinct.size() >= 3, errc::singular_fit,
          "quadratic fit needs at least three distinct abscissae");

  Eigen::MatrixXd design(points.size(), 3);
  Eigen::VectorXd rhs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i].first;
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = x;
    design(static_cast<Eigen::Index>(i), 2) = x * x;
    rhs(static_cast<Eigen::Index>(i)) = points[i].second;
  }
  Eigen::Vector3d coeffs = design.colPivHouseholderQr().solve(rhs);
  return QuadraticModel{coeffs(0), coeffs(1), coeffs(2)};
}

std::vector<double> lagrange_weights(const std::vector<double>& nodes, double x) {
  std::vector<double> weights(nodes.size(), 1.0);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (k == j) continue;
      const double denom = nodes[j] - nodes[k];
      require(std::abs(denom) > 0.0, errc::singular_fit,
              "lagrange weights need distinct nodes");
      weights[j] *= (x - nodes[k]) / denom;
    }
  }
  return weights;
}

}  // namespace qemr
