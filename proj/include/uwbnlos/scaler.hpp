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

#include <vector>

#include "uwbnlos/matrix.hpp"

namespace uwbnlos {

/// Columns whose population standard deviation falls below this are treated
/// as constant and map to 0 under transform.
inline constexpr double kConstantColumnStd = 1e-12;

/// Per-column z-score parameters, fitted on training rows only.
struct ScalerModel {
  Vector means;
  Vector stds;
  std::vector<bool> constant_mask;

  std::size_t dims() const { return static_cast<std::size_t>(means.size()); }
};

ScalerModel scaler_fit(const Matrix& X);
Matrix scaler_transform(const ScalerModel& model, const Matrix& X);

}  // namespace uwbnlos
