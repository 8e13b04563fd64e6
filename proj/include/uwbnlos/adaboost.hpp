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

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "uwbnlos/matrix.hpp"

namespace uwbnlos {

/// Candidate stumps whose weighted errors differ by less than this are
/// considered tied and resolved by enumeration order.
inline constexpr double kStumpTieTolerance = 1e-12;

/// One-feature threshold classifier: polarity if x > threshold, else
/// -polarity. Thresholds may be +-infinity (constant stumps).
struct Stump {
  std::size_t feature_index = 0;
  double threshold = 0.0;
  int polarity = 1;
  double weighted_error = 0.0;

  int predict(double value) const { return value > threshold ? polarity : -polarity; }
  int predict(std::span<const double> row) const { return predict(row[feature_index]); }
};

enum class StopReason { completed, perfect_fit, no_progress };

std::string_view to_string(StopReason reason);
StopReason stop_reason_from_string(std::string_view text);

struct BoostModel {
  std::vector<Stump> stumps;
  std::vector<double> alphas;
  std::size_t rounds_requested = 0;
  StopReason stop_reason = StopReason::completed;
  std::size_t n_features = 0;

  std::size_t rounds_used() const { return stumps.size(); }
};

struct Prediction {
  int label = 1;
  double margin = 0.0;
};

/// Exhaustive search over (feature, threshold, polarity). Thresholds are
/// -inf, the midpoints between consecutive distinct values, and +inf. Ties go
/// to the lowest feature, then the lowest threshold, then polarity +1.
Stump stump_train(const Matrix& X, std::span<const int> y, std::span<const double> weights);

/// What happened in one boosting round; handed to BoostOptions::observer.
struct BoostRound {
  std::size_t round = 0;  // 1-based
  Stump stump;
  double epsilon = 0.0;  // unclamped weighted error
  double alpha = 0.0;
  double normalizer = 0.0;  // Z_t
  bool retained = false;
  std::span<const int> predictions;
  std::span<const double> weights_before;
  std::span<const double> weights_after;  // empty when the round is discarded
};

struct BoostOptions {
  std::size_t rounds = 50;
  double eps_floor = 1e-10;
  std::function<void(const BoostRound&)> observer;
};

/// Discrete AdaBoost over decision stumps.
BoostModel adaboost_train(const Matrix& X, std::span<const int> y, const BoostOptions& options);

/// margin = sum_t alpha_t h_t(x); label = sign(margin) with sign(0) = +1.
Prediction adaboost_predict(const BoostModel& model, std::span<const double> row);
std::vector<Prediction> adaboost_predict(const BoostModel& model, const Matrix& X);

}  // namespace uwbnlos
