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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uwbnlos/dataset.hpp"
#include "uwbnlos/matrix.hpp"

namespace uwbnlos {

/// Position of each statistic in a FeatureVector. The order is part of the
/// model and report formats.
enum class Stat : std::size_t {
  max,
  min,
  mean,
  std_deviation,
  skewness,
  kurtosis,
  energy,
  max_over_min,
  max_minus_min,
  sd_over_mean,
  max_minus_min_squared,
};
inline constexpr std::size_t kStatCount = 11;

const std::array<std::string_view, kStatCount>& stat_names();

/// A ratio whose denominator was exactly zero (or a moment of a constant
/// window). The corresponding value is reported as 0.0.
enum Degenerate : unsigned {
  zero_std = 1u << 0,
  zero_mean = 1u << 1,
  zero_min = 1u << 2,
};

struct FeatureVector {
  std::array<double, kStatCount> values{};
  unsigned degenerate_flags = 0;

  double operator[](Stat s) const { return values[static_cast<std::size_t>(s)]; }
  bool has(Degenerate flag) const { return (degenerate_flags & flag) != 0; }
};

/// Population moments; kurtosis is m4/m2^2 (not excess).
/// The ratio and range columns, from the primary statistics alone.
struct DerivedStats {
  double max_over_min = 0.0;
  double max_minus_min = 0.0;
  double sd_over_mean = 0.0;
  double max_minus_min_squared = 0.0;
  unsigned degenerate_flags = 0;
};

DerivedStats derived_stats(double max, double min, double mean, double std_deviation);

FeatureVector window_stats(std::span<const double> window);

enum class FeatureMode { stats, raw };

std::string_view to_string(FeatureMode mode);
FeatureMode feature_mode_from_string(std::string_view text);

struct FeatureMatrix {
  Matrix values;
  std::vector<std::string> columns;

  std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

FeatureMatrix stats_matrix(const Matrix& windows);
FeatureMatrix stats_matrix(const LabeledDataset& ds);
FeatureMatrix raw_matrix(const Matrix& windows);
FeatureMatrix extract_features(FeatureMode mode, const Matrix& windows);

/// Columns produced by `mode` for windows of length `window_length`.
std::size_t feature_width(FeatureMode mode, std::size_t window_length);

}  // namespace uwbnlos
