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
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace uwbnlos {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
  friend auto operator<=>(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Indicators in the order reports print them.
enum class Metric : std::size_t { sensitivity, specificity, precision, npv, accuracy, f1, mcc };
inline constexpr std::size_t kMetricCount = 7;

std::string_view display_name(Metric metric);
std::string_view key(Metric metric);

struct MetricsReport {
  ConfusionMatrix counts;
  /// Indexed by Metric. Rates are in [0, 1], mcc in [-1, 1].
  std::array<double, kMetricCount> values{};
  /// A value whose denominator was zero; it is reported as 0.0.
  std::array<bool, kMetricCount> undefined{};

  double operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
  bool is_undefined(Metric m) const { return undefined[static_cast<std::size_t>(m)]; }
  double accuracy() const { return (*this)[Metric::accuracy]; }
};

/// Positive class is +1.
ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted);
MetricsReport compute_metrics(const ConfusionMatrix& cm);

/// Search for integer confusion matrices consistent with a set of reported
/// percentages.
struct ReconstructQuery {
  /// Percentages (0-100; mcc as 100 * mcc), indexed by Metric.
  std::array<double, kMetricCount> targets{};
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 1;
  /// Absolute tolerance in percentage points.
  double tol = 1e-6;
  /// When set, computed percentages are rounded to this many decimals before
  /// comparison (reported tables are rounded).
  std::optional<int> decimals;
};

/// Every matching matrix, sorted by (N, tp, fp, tn, fn).
std::vector<ConfusionMatrix> reconstruct_cm(const ReconstructQuery& query);

/// Published results for the static and dynamic scenarios, as percentages in
/// Metric order.
inline constexpr std::array<double, kMetricCount> kReferenceStatic{78.75, 91.25, 72.86, 93.50, 88.37, 75.69, 67.82};
inline constexpr std::array<double, kMetricCount> kReferenceDynamic{83.01, 90.85, 88.77, 85.99, 87.20, 85.79, 74.31};

}  // namespace uwbnlos
