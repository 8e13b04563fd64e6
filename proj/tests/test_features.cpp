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
#include <vector>

#include "uwbnlos/features.hpp"
#include "uwbnlos/rng.hpp"

using namespace uwbnlos;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::vector<double> random_window(Rng& rng, std::size_t n = 256) {
  std::vector<double> w(n);
  for (auto& v : w) v = rng.normal() * 0.1 + rng.laplace(0.02);
  return w;
}

}  // namespace

TEST_CASE("alternating window") {
  const std::vector<double> w{1, -1, 1, -1};
  const auto fv = window_stats(w);
  CHECK(fv[Stat::max] == 1.0);
  CHECK(fv[Stat::min] == -1.0);
  CHECK(fv[Stat::mean] == 0.0);
  CHECK(fv[Stat::std_deviation] == doctest::Approx(1.0));
  CHECK(fv[Stat::skewness] == doctest::Approx(0.0));
  CHECK(fv[Stat::kurtosis] == doctest::Approx(1.0));
  CHECK(fv[Stat::energy] == 4.0);
  CHECK(fv[Stat::max_over_min] == -1.0);
  CHECK(fv[Stat::max_minus_min] == 2.0);
  CHECK(fv[Stat::sd_over_mean] == 0.0);
  CHECK(fv.has(zero_mean));
  CHECK_FALSE(fv.has(zero_std));
  CHECK(fv[Stat::max_minus_min_squared] == 4.0);
}

TEST_CASE("constant window") {
  const std::vector<double> w{2, 2, 2, 2};
  const auto fv = window_stats(w);
  CHECK(fv[Stat::max] == 2.0);
  CHECK(fv[Stat::min] == 2.0);
  CHECK(fv[Stat::mean] == 2.0);
  CHECK(fv[Stat::std_deviation] == 0.0);
  CHECK(fv[Stat::skewness] == 0.0);
  CHECK(fv[Stat::kurtosis] == 0.0);
  CHECK(fv.has(zero_std));
  CHECK(fv[Stat::energy] == 16.0);
  CHECK(fv[Stat::max_over_min] == 1.0);
  CHECK(fv[Stat::max_minus_min] == 0.0);
  CHECK(fv[Stat::sd_over_mean] == 0.0);
  CHECK(fv[Stat::max_minus_min_squared] == 0.0);
}

TEST_CASE("near-constant window keeps mean inside [min, max]") {
  const std::vector<double> w(3, 0.1);
  const auto fv = window_stats(w);
  CHECK(fv[Stat::mean] <= fv[Stat::max]);
  CHECK(fv[Stat::mean] >= fv[Stat::min]);
  CHECK(fv.has(zero_std));
}

TEST_CASE("zero minimum is flagged") {
  const std::vector<double> w{0.0, 1.0, 2.0};
  const auto fv = window_stats(w);
  CHECK(fv.has(zero_min));
  CHECK(fv[Stat::max_over_min] == 0.0);
}

TEST_CASE("skewness and kurtosis against a hand-computed window") {
  // x = [0, 0, 0, 4]: mean 1, deviations -1,-1,-1,3.
  // m2 = 12/4 = 3, m3 = (-3 + 27)/4 = 6, m4 = (3 + 81)/4 = 21.
  const std::vector<double> w{0, 0, 0, 4};
  const auto fv = window_stats(w);
  CHECK(fv[Stat::skewness] == doctest::Approx(6.0 / std::pow(3.0, 1.5)).epsilon(1e-12));
  CHECK(fv[Stat::kurtosis] == doctest::Approx(21.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("energy identity and derived columns on random windows") {
  Rng rng(21, Stream::noise);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = random_window(rng);
    const auto fv = window_stats(w);
    const double n = static_cast<double>(w.size());
    const double var = fv[Stat::std_deviation] * fv[Stat::std_deviation];
    CHECK(rel_close(fv[Stat::energy], n * (fv[Stat::mean] * fv[Stat::mean] + var), 1e-9));
    CHECK(rel_close(fv[Stat::max_over_min] * fv[Stat::min], fv[Stat::max], 1e-12));
    CHECK(rel_close(fv[Stat::sd_over_mean] * fv[Stat::mean], fv[Stat::std_deviation], 1e-12));
    CHECK(rel_close(fv[Stat::max_minus_min_squared], fv[Stat::max_minus_min] * fv[Stat::max_minus_min], 1e-12));
    CHECK(fv[Stat::max] >= fv[Stat::mean]);
    CHECK(fv[Stat::mean] >= fv[Stat::min]);
    for (double v : fv.values) CHECK(std::isfinite(v));
  }
}

TEST_CASE("scale and shift behaviour") {
  Rng rng(5, Stream::noise);
  for (int trial = 0; trial < 50; ++trial) {
    auto w = random_window(rng, 64);
    const auto base = window_stats(w);
    const double s = rng.uniform(0.1, 10.0);
    std::vector<double> scaled(w);
    for (auto& v : scaled) v *= s;
    const auto fs = window_stats(scaled);
    for (auto stat : {Stat::max, Stat::min, Stat::mean, Stat::std_deviation}) {
      CHECK(rel_close(fs[stat], s * base[stat], 1e-9));
    }
    CHECK(rel_close(fs[Stat::energy], s * s * base[Stat::energy], 1e-9));
    for (auto stat : {Stat::skewness, Stat::kurtosis, Stat::max_over_min, Stat::sd_over_mean}) {
      CHECK(rel_close(fs[stat], base[stat], 1e-9));
    }

    const double c = rng.uniform(-3.0, 3.0);
    std::vector<double> shifted(w);
    for (auto& v : shifted) v += c;
    const auto fc = window_stats(shifted);
    CHECK(fc[Stat::mean] == doctest::Approx(base[Stat::mean] + c).epsilon(1e-9));
    CHECK(rel_close(fc[Stat::std_deviation], base[Stat::std_deviation], 1e-9));
    CHECK(std::abs(fc[Stat::skewness] - base[Stat::skewness]) <= 1e-7);
    CHECK(std::abs(fc[Stat::kurtosis] - base[Stat::kurtosis]) <= 1e-7);
    CHECK(rel_close(fc[Stat::max_minus_min], base[Stat::max_minus_min], 1e-9));
  }
}

TEST_CASE("batched extraction preserves rows and shape") {
  Rng rng(1, Stream::noise);
  Matrix windows(5, 32);
  for (Eigen::Index i = 0; i < windows.rows(); ++i) {
    for (Eigen::Index j = 0; j < windows.cols(); ++j) windows(i, j) = rng.normal();
  }
  const auto fm = stats_matrix(windows);
  CHECK(fm.rows() == 5);
  CHECK(fm.cols() == kStatCount);
  CHECK(fm.columns.front() == "max");
  CHECK(fm.columns.back() == "max_minus_min_squared");
  for (Eigen::Index i = 0; i < windows.rows(); ++i) {
    const auto fv = window_stats(row_span(windows, i));
    for (std::size_t c = 0; c < kStatCount; ++c) CHECK(fm.values(i, static_cast<Eigen::Index>(c)) == fv.values[c]);
  }
  const auto one = stats_matrix(Matrix(windows.topRows(1)));
  CHECK(one.rows() == 1);

  const auto raw = raw_matrix(windows);
  CHECK(raw.values == windows);
  CHECK(raw.columns[31] == "s31");
  CHECK(feature_width(FeatureMode::raw, 256) == 256);
  CHECK(feature_width(FeatureMode::stats, 256) == 11);
}

TEST_CASE("derived columns of a published feature row") {
  // Primaries of the first row of the reference feature table.
  const auto d = derived_stats(0.652988, -0.478481, -39.062063, 0.098293);
  CHECK(std::abs(d.max_over_min - -1.364710) <= 1e-5);
  CHECK(std::abs(d.max_minus_min - 1.131469) <= 1e-5);
  CHECK(std::abs(d.max_minus_min_squared - 1.280221) <= 1e-5);
  CHECK(std::abs(d.sd_over_mean - -0.002516) <= 1e-5);
  CHECK(d.degenerate_flags == 0);
  // The listed energy matches 256 * std^2 for this row.
  CHECK(std::abs(256.0 * 0.098293 * 0.098293 - 2.473360) <= 1e-4);

  const auto z = derived_stats(1.0, 0.0, 0.0, 0.5);
  CHECK(z.max_over_min == 0.0);
  CHECK(z.sd_over_mean == 0.0);
  CHECK((z.degenerate_flags & zero_min) != 0);
  CHECK((z.degenerate_flags & zero_mean) != 0);
}
