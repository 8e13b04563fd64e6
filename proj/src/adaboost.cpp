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

#include "uwbnlos/adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "uwbnlos/error.hpp"

namespace uwbnlos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double midpoint(double a, double b) {
  const double m = a + (b - a) / 2.0;
  return m >= b ? a : m;
}

// Column orderings are fixed across rounds, so they are sorted once.
class StumpSearch {
 public:
  StumpSearch(const Matrix& X, std::span<const int> y) : X_(X), y_(y), order_(static_cast<std::size_t>(X.cols())) {
    const auto n = static_cast<std::size_t>(X.rows());
    for (Eigen::Index d = 0; d < X.cols(); ++d) {
      auto& ord = order_[static_cast<std::size_t>(d)];
      ord.resize(n);
      std::iota(ord.begin(), ord.end(), std::size_t{0});
      std::stable_sort(ord.begin(), ord.end(), [&X, d](std::size_t a, std::size_t b) {
        return X(static_cast<Eigen::Index>(a), d) < X(static_cast<Eigen::Index>(b), d);
      });
    }
  }

  Stump best(std::span<const double> w) const {
    double pos_total = 0.0;
    double neg_total = 0.0;
    for (std::size_t i = 0; i < y_.size(); ++i) (y_[i] > 0 ? pos_total : neg_total) += w[i];

    Stump best;
    double best_error = kInf;
    auto consider = [&](std::size_t feature, double threshold, double err_pos) {
      // err_pos: error of polarity +1; polarity -1 makes exactly the other mistakes.
      const double err_neg = (pos_total + neg_total) - err_pos;
      if (err_pos < best_error - kStumpTieTolerance) {
        best_error = err_pos;
        best = {feature, threshold, 1, 0.0};
      }
      if (err_neg < best_error - kStumpTieTolerance) {
        best_error = err_neg;
        best = {feature, threshold, -1, 0.0};
      }
    };

    for (std::size_t d = 0; d < order_.size(); ++d) {
      const auto& ord = order_[d];
      const auto col = static_cast<Eigen::Index>(d);
      // Polarity +1 with threshold t errs on positives at or below t and
      // negatives above it. At -inf nothing is below.
      double pos_left = 0.0;
      double neg_left = 0.0;
      consider(d, -kInf, neg_total);
      for (std::size_t k = 0; k < ord.size(); ++k) {
        const auto i = ord[k];
        (y_[i] > 0 ? pos_left : neg_left) += w[i];
        const double v = X_(static_cast<Eigen::Index>(i), col);
        if (k + 1 < ord.size()) {
          const double next = X_(static_cast<Eigen::Index>(ord[k + 1]), col);
          if (next == v) continue;
          consider(d, midpoint(v, next), pos_left + (neg_total - neg_left));
        }
      }
      consider(d, kInf, pos_total);
    }
    best.weighted_error = error_of(best, w);
    return best;
  }

  double error_of(const Stump& s, std::span<const double> w) const {
    double err = 0.0;
    for (std::size_t i = 0; i < y_.size(); ++i) {
      if (s.predict(row_span(X_, static_cast<Eigen::Index>(i))) != y_[i]) err += w[i];
    }
    return err;
  }

 private:
  const Matrix& X_;
  std::span<const int> y_;
  std::vector<std::vector<std::size_t>> order_;
};

void check_inputs(const Matrix& X, std::span<const int> y) {
  if (X.rows() == 0 || X.cols() == 0) throw Error(ErrorCode::empty_data, "no training rows");
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    throw Error(ErrorCode::length_mismatch, "X has " + std::to_string(X.rows()) + " rows but " +
                                                std::to_string(y.size()) + " labels");
  }
  if (X.rows() < 2) throw Error(ErrorCode::empty_data, "need at least 2 training rows");
  for (int label : y) {
    if (label != 1 && label != -1) throw Error(ErrorCode::invalid_argument, "labels must be +1 or -1");
  }
  if (!X.allFinite()) throw Error(ErrorCode::invalid_argument, "features must be finite");
}

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::completed: return "completed";
    case StopReason::perfect_fit: return "perfect_fit";
    case StopReason::no_progress: return "no_progress";
  }
  return "completed";
}

StopReason stop_reason_from_string(std::string_view text) {
  if (text == "completed") return StopReason::completed;
  if (text == "perfect_fit") return StopReason::perfect_fit;
  if (text == "no_progress") return StopReason::no_progress;
  throw Error(ErrorCode::invalid_argument, "unknown stop reason '" + std::string(text) + "'");
}

Stump stump_train(const Matrix& X, std::span<const int> y, std::span<const double> weights) {
  check_inputs(X, y);
  if (weights.size() != y.size()) throw Error(ErrorCode::length_mismatch, "one weight per row required");
  return StumpSearch(X, y).best(weights);
}

BoostModel adaboost_train(const Matrix& X, std::span<const int> y, const BoostOptions& options) {
  check_inputs(X, y);
  if (options.rounds < 1) throw Error(ErrorCode::invalid_argument, "rounds must be at least 1");
  if (!(options.eps_floor > 0.0 && options.eps_floor < 0.5)) {
    throw Error(ErrorCode::invalid_argument, "eps_floor must lie in (0, 0.5)");
  }
  const bool has_pos = std::find(y.begin(), y.end(), 1) != y.end();
  const bool has_neg = std::find(y.begin(), y.end(), -1) != y.end();
  if (!has_pos || !has_neg) throw Error(ErrorCode::single_class, "both classes must be present");

  const std::size_t m = y.size();
  const StumpSearch search(X, y);
  std::vector<double> weights(m, 1.0 / static_cast<double>(m));
  std::vector<double> next(m);
  std::vector<int> predictions(m);

  BoostModel model;
  model.rounds_requested = options.rounds;
  model.n_features = static_cast<std::size_t>(X.cols());

  for (std::size_t t = 1; t <= options.rounds; ++t) {
    const Stump stump = search.best(weights);
    const double eps = stump.weighted_error;
    for (std::size_t i = 0; i < m; ++i) predictions[i] = stump.predict(row_span(X, static_cast<Eigen::Index>(i)));

    BoostRound round;
    round.round = t;
    round.stump = stump;
    round.epsilon = eps;
    round.predictions = predictions;
    round.weights_before = weights;

    // Reweighting leaves the previous stump at exactly 0.5 in exact arithmetic;
    // rounding must not let it back in with a vanishing alpha.
    if (eps >= 0.5 - kStumpTieTolerance) {
      if (options.observer) options.observer(round);
      if (model.stumps.empty()) {
        throw Error(ErrorCode::degenerate_data, "no stump does better than chance on the training data");
      }
      model.stop_reason = StopReason::no_progress;
      break;
    }

    const double clamped = std::clamp(eps, options.eps_floor, 1.0 - options.eps_floor);
    const double alpha = 0.5 * std::log((1.0 - clamped) / clamped);
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = weights[i] * std::exp(-alpha * y[i] * predictions[i]);
      z += next[i];
    }
    for (auto& v : next) v /= z;

    round.alpha = alpha;
    round.normalizer = z;
    round.retained = true;
    round.weights_after = next;
    if (options.observer) options.observer(round);

    model.stumps.push_back(stump);
    model.alphas.push_back(alpha);
    weights.swap(next);
    if (eps == 0.0) {
      model.stop_reason = StopReason::perfect_fit;
      break;
    }
  }
  return model;
}

Prediction adaboost_predict(const BoostModel& model, std::span<const double> row) {
  if (row.size() != model.n_features) {
    throw Error(ErrorCode::dimension_mismatch, "classifier expects " + std::to_string(model.n_features) +
                                                   " features, got " + std::to_string(row.size()));
  }
  double margin = 0.0;
  for (std::size_t t = 0; t < model.stumps.size(); ++t) margin += model.alphas[t] * model.stumps[t].predict(row);
  return {margin >= 0.0 ? 1 : -1, margin};
}

std::vector<Prediction> adaboost_predict(const BoostModel& model, const Matrix& X) {
  if (static_cast<std::size_t>(X.cols()) != model.n_features) {
    throw Error(ErrorCode::dimension_mismatch, "classifier expects " + std::to_string(model.n_features) +
                                                   " features, got " + std::to_string(X.cols()));
  }
  std::vector<Prediction> out;
  out.reserve(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) out.push_back(adaboost_predict(model, row_span(X, i)));
  return out;
}

}  // namespace uwbnlos
