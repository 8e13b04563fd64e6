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

#include "uwbnlos/features.hpp"

#include <algorithm>
#include <cmath>

#include "uwbnlos/error.hpp"

namespace uwbnlos {

const std::array<std::string_view, kStatCount>& stat_names() {
  static constexpr std::array<std::string_view, kStatCount> kNames{
      "max",    "min",          "mean",          "std_deviation", "skewness",
      "kurtosis", "energy",     "max_over_min",  "max_minus_min", "sd_over_mean",
      "max_minus_min_squared",
  };
  return kNames;
}

DerivedStats derived_stats(double max, double min, double mean, double std_deviation) {
  DerivedStats d;
  if (min == 0.0) {
    d.degenerate_flags |= zero_min;
  } else {
    d.max_over_min = max / min;
  }
  d.max_minus_min = max - min;
  if (mean == 0.0) {
    d.degenerate_flags |= zero_mean;
  } else {
    d.sd_over_mean = std_deviation / mean;
  }
  d.max_minus_min_squared = d.max_minus_min * d.max_minus_min;
  return d;
}

FeatureVector window_stats(std::span<const double> window) {
  if (window.size() < 2) throw Error(ErrorCode::invalid_argument, "window needs at least 2 samples");
  const double n = static_cast<double>(window.size());

  const auto [lo_it, hi_it] = std::minmax_element(window.begin(), window.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  double sum = 0.0;
  double energy = 0.0;
  for (double x : window) {
    sum += x;
    energy += x * x;
  }
  // Rounding can push the mean of a near-constant window just past an extreme.
  const double mean = std::clamp(sum / n, lo, hi);

  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : window) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  FeatureVector fv;
  auto set = [&fv](Stat s, double v) { fv.values[static_cast<std::size_t>(s)] = v; };

  const bool constant = hi == lo || m2 == 0.0;
  const double sd = constant ? 0.0 : std::sqrt(m2);
  set(Stat::max, hi);
  set(Stat::min, lo);
  set(Stat::mean, mean);
  set(Stat::std_deviation, sd);
  if (constant) {
    fv.degenerate_flags |= zero_std;
    set(Stat::skewness, 0.0);
    set(Stat::kurtosis, 0.0);
  } else {
    set(Stat::skewness, m3 / (m2 * std::sqrt(m2)));
    set(Stat::kurtosis, m4 / (m2 * m2));
  }
  set(Stat::energy, energy);

  const auto d = derived_stats(hi, lo, mean, sd);
  fv.degenerate_flags |= d.degenerate_flags;
  set(Stat::max_over_min, d.max_over_min);
  set(Stat::max_minus_min, d.max_minus_min);
  set(Stat::sd_over_mean, d.sd_over_mean);
  set(Stat::max_minus_min_squared, d.max_minus_min_squared);
  return fv;
}

std::string_view to_string(FeatureMode mode) { return mode == FeatureMode::stats ? "stats" : "raw"; }

FeatureMode feature_mode_from_string(std::string_view text) {
  if (text == "stats") return FeatureMode::stats;
  if (text == "raw") return FeatureMode::raw;
  throw Error(ErrorCode::invalid_argument, "unknown feature mode '" + std::string(text) + "'");
}

FeatureMatrix stats_matrix(const Matrix& windows) {
  FeatureMatrix out;
  out.values.resize(windows.rows(), static_cast<Eigen::Index>(kStatCount));
  for (Eigen::Index i = 0; i < windows.rows(); ++i) {
    const auto fv = window_stats(row_span(windows, i));
    for (std::size_t c = 0; c < kStatCount; ++c) out.values(i, static_cast<Eigen::Index>(c)) = fv.values[c];
  }
  for (auto name : stat_names()) out.columns.emplace_back(name);
  return out;
}

FeatureMatrix stats_matrix(const LabeledDataset& ds) { return stats_matrix(ds.windows()); }

FeatureMatrix raw_matrix(const Matrix& windows) {
  FeatureMatrix out{windows, {}};
  for (Eigen::Index j = 0; j < windows.cols(); ++j) out.columns.push_back("s" + std::to_string(j));
  return out;
}

FeatureMatrix extract_features(FeatureMode mode, const Matrix& windows) {
  return mode == FeatureMode::stats ? stats_matrix(windows) : raw_matrix(windows);
}

std::size_t feature_width(FeatureMode mode, std::size_t window_length) {
  return mode == FeatureMode::stats ? kStatCount : window_length;
}

}  // namespace uwbnlos
