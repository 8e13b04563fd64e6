/*
 * Copyright 2026 The uwbnlos Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Source-matching oracle shared by the ICA unit tests and the acceptance
// suite. It only looks at data, never at the fitted model.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "uwbnlos/matrix.hpp"

namespace uwbnlos::testing {

inline double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::ArrayXd x = a.array() - a.mean();
  const Eigen::ArrayXd y = b.array() - b.mean();
  return (x * y).sum() / std::sqrt((x * x).sum() * (y * y).sum());
}

/// Best one-to-one assignment of recovered columns to true sources, by
/// exhaustive search over permutations; returns the smallest |correlation|
/// in that assignment.
inline double min_matched_correlation(const Matrix& recovered, const Matrix& sources) {
  const auto k = static_cast<std::size_t>(sources.cols());
  std::vector<std::vector<double>> corr(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      corr[i][j] = std::abs(pearson(recovered.col(static_cast<Eigen::Index>(i)),
                                    sources.col(static_cast<Eigen::Index>(j))));
    }
  }
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = 0.0;
  do {
    double worst = 1.0;
    for (std::size_t i = 0; i < k; ++i) worst = std::min(worst, corr[i][perm[i]]);
    best = std::max(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double covariance_deviation(const Matrix& Z) {
  const Eigen::MatrixXd cov = Z.transpose() * Z / static_cast<double>(Z.rows());
  return (cov - Eigen::MatrixXd::Identity(Z.cols(), Z.cols())).cwiseAbs().maxCoeff();
}

inline double orthonormality_deviation(const Matrix& W) {
  const Eigen::MatrixXd g = W * W.transpose();
  return (g - Eigen::MatrixXd::Identity(W.rows(), W.rows())).cwiseAbs().maxCoeff();
}

}  // namespace uwbnlos::testing
