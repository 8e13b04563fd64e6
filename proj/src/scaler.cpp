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

#include "uwbnlos/scaler.hpp"

#include <cmath>
#include <string>

#include "uwbnlos/error.hpp"

namespace uwbnlos {

ScalerModel scaler_fit(const Matrix& X) {
  if (X.rows() == 0 || X.cols() == 0) throw Error(ErrorCode::empty_matrix, "cannot fit a scaler on an empty matrix");
  const double n = static_cast<double>(X.rows());
  ScalerModel m;
  m.means = X.colwise().sum().transpose() / n;
  m.stds.resize(X.cols());
  m.constant_mask.resize(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index d = 0; d < X.cols(); ++d) {
    const double var = (X.col(d).array() - m.means(d)).square().sum() / n;
    m.stds(d) = std::sqrt(var);
    m.constant_mask[static_cast<std::size_t>(d)] = m.stds(d) < kConstantColumnStd;
  }
  return m;
}

Matrix scaler_transform(const ScalerModel& model, const Matrix& X) {
  if (static_cast<std::size_t>(X.cols()) != model.dims()) {
    throw Error(ErrorCode::dimension_mismatch, "scaler expects " + std::to_string(model.dims()) +
                                                   " columns, got " + std::to_string(X.cols()));
  }
  Matrix out(X.rows(), X.cols());
  for (Eigen::Index d = 0; d < X.cols(); ++d) {
    if (model.constant_mask[static_cast<std::size_t>(d)]) {
      out.col(d).setZero();
    } else {
      out.col(d) = (X.col(d).array() - model.means(d)) / model.stds(d);
    }
  }
  return out;
}

}  // namespace uwbnlos
