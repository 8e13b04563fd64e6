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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "stump_oracle.hpp"
#include "uwbnlos/adaboost.hpp"
#include "uwbnlos/error.hpp"
#include "uwbnlos/rng.hpp"
#include "uwbnlos/synth.hpp"

using namespace uwbnlos;
using namespace uwbnlos::testing;

namespace {

Matrix column(std::initializer_list<double> values) {
  Matrix X(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) X(i++, 0) = v;
  return X;
}

std::vector<double> uniform_weights(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

double training_error(const BoostModel& m, const Matrix& X, std::span<const int> y) {
  std::size_t wrong = 0;
  const auto preds = adaboost_predict(m, X);
  for (std::size_t i = 0; i < y.size(); ++i) wrong += preds[i].label != y[i] ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(y.size());
}

}  // namespace

TEST_CASE("separable one-dimensional stumps") {
  const Matrix X = column({1, 2, 3, 4});
  const std::vector<int> up{-1, -1, 1, 1};
  const auto s = stump_train(X, up, uniform_weights(4));
  CHECK(s.feature_index == 0);
  CHECK(s.threshold == 2.5);
  CHECK(s.predict(3.0) == 1);
  CHECK(s.predict(2.0) == -1);
  CHECK(s.weighted_error == 0.0);

  const std::vector<int> down{1, 1, -1, -1};
  const auto t = stump_train(X, down, uniform_weights(4));
  CHECK(t.threshold == 2.5);
  CHECK(t.polarity == -s.polarity);
  CHECK(t.weighted_error == 0.0);
}

TEST_CASE("tie between features goes to the lower index") {
  // Each feature alone misclassifies exactly one of four rows.
  Matrix X(4, 2);
  X << 1, 1,  //
      2, 4,   //
      3, 3,   //
      4, 2;
  const std::vector<int> y{-1, 1, -1, 1};
  const auto w = uniform_weights(4);
  const auto oracle = brute_force_stump(X, y, w);
  const auto s = stump_train(X, y, w);
  CHECK(oracle.weighted_error == doctest::Approx(0.25));
  CHECK(s.feature_index == 0);
  CHECK(s.feature_index == oracle.feature_index);
  CHECK(s.threshold == oracle.threshold);
  CHECK(s.polarity == oracle.polarity);
}

TEST_CASE("degenerate rows give the best constant stump") {
  const Matrix X = Matrix::Constant(5, 2, 3.0);
  const std::vector<int> y{1, 1, 1, -1, -1};
  const auto s = stump_train(X, y, uniform_weights(5));
  CHECK(std::isinf(s.threshold));
  CHECK(s.weighted_error == doctest::Approx(0.4));
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(s.predict(row_span(X, i)) == 1);
}

TEST_CASE("stump search agrees with brute force on random instances") {
  Rng rng(31, Stream::noise);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = 2 + rng.below(29);
    const auto d = 1 + rng.below(4);
    Matrix X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    std::vector<int> y(n);
    std::vector<double> w(n);
    const bool coarse = trial % 2 == 0;  // few distinct values: many ties
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            coarse ? static_cast<double>(rng.below(4)) : rng.normal();
      }
      y[i] = rng.uniform() < 0.5 ? 1 : -1;
      w[i] = trial % 3 == 0 ? 1.0 : rng.uniform(0.1, 1.0);
      total += w[i];
    }
    for (auto& v : w) v /= total;
    const auto s = stump_train(X, y, w);
    const auto o = brute_force_stump(X, y, w);
    CHECK(s.feature_index == o.feature_index);
    CHECK(s.threshold == o.threshold);
    CHECK(s.polarity == o.polarity);
    CHECK(std::abs(s.weighted_error - o.weighted_error) <= 1e-12);
    CHECK(s.weighted_error <= 0.5 + 1e-12);
  }
}

TEST_CASE("first boosting round on the four-sample example") {
  // Only sample 4 is misclassified by the best first stump.
  const Matrix X = column({1, 2, 3, 4});
  const std::vector<int> y{-1, 1, 1, -1};
  std::vector<BoostRound> rounds;
  std::vector<std::vector<double>> after;
  BoostOptions options;
  options.rounds = 1;
  options.observer = [&](const BoostRound& r) {
    rounds.push_back(r);
    after.emplace_back(r.weights_after.begin(), r.weights_after.end());
  };
  const auto model = adaboost_train(X, y, options);
  REQUIRE(rounds.size() == 1);
  CHECK(rounds[0].epsilon == 0.25);
  CHECK(std::abs(rounds[0].alpha - 0.5 * std::log(3.0)) <= 1e-12);
  CHECK(std::abs(rounds[0].alpha - 0.549306) <= 1e-6);
  CHECK(std::abs(after[0][0] - 1.0 / 6) <= 1e-12);
  CHECK(std::abs(after[0][1] - 1.0 / 6) <= 1e-12);
  CHECK(std::abs(after[0][2] - 1.0 / 6) <= 1e-12);
  CHECK(std::abs(after[0][3] - 0.5) <= 1e-12);
  CHECK(rounds[0].stump.threshold == 1.5);
  CHECK(model.rounds_used() == 1);
  CHECK(model.stop_reason == StopReason::completed);
}

TEST_CASE("perfect first stump stops with perfect_fit") {
  const Matrix X = column({1, 2, 3, 4});
  const std::vector<int> y{-1, -1, 1, 1};
  const auto model = adaboost_train(X, y, {});
  CHECK(model.rounds_used() == 1);
  CHECK(model.stop_reason == StopReason::perfect_fit);
  CHECK(std::isfinite(model.alphas[0]));
  CHECK(model.alphas[0] > 0.0);
  CHECK(training_error(model, X, y) == 0.0);
}

TEST_CASE("a chance-level round ends training with no_progress") {
  // XOR on two binary features: after one round, every stump sits at 0.5.
  Matrix X(4, 2);
  X << 0, 0, 0, 1, 1, 0, 1, 1;
  const std::vector<int> y{-1, 1, 1, -1};
  std::vector<double> eps;
  BoostOptions options;
  options.observer = [&](const BoostRound& r) { eps.push_back(r.epsilon); };
  // With uniform weights every stump already scores 0.5 (or worse), so there
  // is nothing to keep.
  try {
    adaboost_train(X, y, options);
    FAIL("expected DegenerateData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_data);
  }
  CHECK(eps.size() == 1);
  CHECK(eps[0] == 0.5);

  // One feature with no information: the constant stump helps once, after
  // which both constant stumps sit at chance.
  const Matrix X2 = Matrix::Zero(4, 1);
  const std::vector<int> y2{-1, -1, -1, 1};
  std::vector<BoostRound> seen;
  std::vector<double> seen_eps;
  options.observer = [&](const BoostRound& r) {
    seen_eps.push_back(r.epsilon);
    seen.push_back(r);
  };
  const auto model = adaboost_train(X2, y2, options);
  CHECK(model.stop_reason == StopReason::no_progress);
  CHECK(model.rounds_used() == 1);
  REQUIRE(seen_eps.size() == 2);
  CHECK(seen_eps[0] == 0.25);
  CHECK(std::abs(seen_eps[1] - 0.5) <= 1e-12);
  CHECK_FALSE(seen.back().retained);
  for (double a : model.alphas) CHECK(a > 0.0);
}

TEST_CASE("reweighting invariants and the training-error bound") {
  Rng rng(8, Stream::noise);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ds = gen_two_class({120, 3, 1.5, static_cast<std::uint64_t>(trial)});
    const Matrix& X = ds.windows();
    const auto y = ds.labels();
    double bound = 1.0;
    double sum_dev = 0.0;
    double mis_dev = 0.0;
    BoostOptions options;
    options.rounds = 40;
    options.observer = [&](const BoostRound& r) {
      if (!r.retained) return;
      double sum = 0.0;
      double mis = 0.0;
      for (std::size_t i = 0; i < r.weights_after.size(); ++i) {
        sum += r.weights_after[i];
        if (r.predictions[i] != y[i]) mis += r.weights_after[i];
        CHECK(r.weights_after[i] > 0.0);
      }
      sum_dev = std::max(sum_dev, std::abs(sum - 1.0));
      if (r.epsilon > 0.0) mis_dev = std::max(mis_dev, std::abs(mis - 0.5));
      CHECK(r.epsilon < 0.5);
      const double z = 2.0 * std::sqrt(r.epsilon * (1.0 - r.epsilon));
      CHECK(std::abs(r.normalizer - z) <= 1e-12);
      bound *= z;
    };
    const auto model = adaboost_train(X, y, options);
    CHECK(sum_dev <= 1e-9);
    CHECK(mis_dev <= 1e-9);
    CHECK(training_error(model, X, y) <= bound);
    for (double a : model.alphas) CHECK(a > 0.0);

    const auto again = adaboost_train(X, y, {40, 1e-10, nullptr});
    REQUIRE(again.stumps.size() == model.stumps.size());
    for (std::size_t t = 0; t < model.stumps.size(); ++t) {
      CHECK(again.stumps[t].threshold == model.stumps[t].threshold);
      CHECK(again.alphas[t] == model.alphas[t]);
    }
  }
  (void)rng;
}

TEST_CASE("monotone transforms of a feature leave predictions unchanged") {
  const auto ds = gen_two_class({150, 3, 1.0, 77});
  Matrix Y = ds.windows();
  Y.col(1) = Y.col(1).array().exp().matrix();
  Y.col(2) = (Y.col(2).array() * 3.0 + 1.0).cube().matrix();
  BoostOptions options;
  options.rounds = 30;
  const auto a = adaboost_train(ds.windows(), ds.labels(), options);
  const auto b = adaboost_train(Y, ds.labels(), options);
  const auto pa = adaboost_predict(a, ds.windows());
  const auto pb = adaboost_predict(b, Y);
  for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pa[i].label == pb[i].label);
}

TEST_CASE("separable two-class set reaches zero training error within 25 rounds") {
  const auto ds = gen_two_class({200, 2, 4.0, 7});
  BoostOptions options;
  options.rounds = 25;
  const auto model = adaboost_train(ds.windows(), ds.labels(), options);
  CHECK(training_error(model, ds.windows(), ds.labels()) == 0.0);
}

TEST_CASE("prediction arithmetic") {
  BoostModel m;
  m.n_features = 1;
  m.rounds_requested = 2;
  m.stumps = {{0, 0.0, 1, 0.1}};
  m.alphas = {1.0};
  const std::vector<double> x{1.0};
  auto p = adaboost_predict(m, x);
  CHECK(p.label == 1);
  CHECK(p.margin == 1.0);

  m.stumps = {{0, 0.0, 1, 0.1}, {0, 0.0, -1, 0.2}};
  m.alphas = {0.6, 0.4};
  p = adaboost_predict(m, x);
  CHECK(p.label == 1);
  CHECK(p.margin == doctest::Approx(0.2));

  m.alphas = {0.5, 0.5};
  p = adaboost_predict(m, x);
  CHECK(p.margin == 0.0);
  CHECK(p.label == 1);

  CHECK_THROWS_AS(adaboost_predict(m, std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("training preconditions") {
  const Matrix X = column({1, 2, 3});
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_argument;
  };
  CHECK(code([&] { adaboost_train(X, std::vector<int>{1, 1, 1}, {}); }) == ErrorCode::single_class);
  CHECK(code([&] { adaboost_train(Matrix(0, 1), std::vector<int>{}, {}); }) == ErrorCode::empty_data);
  CHECK(code([&] { adaboost_train(X, std::vector<int>{1, -1}, {}); }) == ErrorCode::length_mismatch);
  BoostOptions zero;
  zero.rounds = 0;
  CHECK_THROWS_AS(adaboost_train(X, std::vector<int>{1, -1, 1}, zero), Error);
}
