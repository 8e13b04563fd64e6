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

#include <cstdint>
#include <optional>
#include <vector>

#include "uwbnlos/dataset.hpp"
#include "uwbnlos/matrix.hpp"

namespace uwbnlos {

/// Mixing matrices with a larger 2-norm condition number are rejected.
inline constexpr double kMaxMixingCondition = 10.0;

/// Two spherical unit-variance Gaussian classes whose means sit at
/// +-separation/2 along the first axis. Present rows get ceil(n/2).
struct TwoClassSpec {
  std::size_t n = 200;
  std::size_t dim = 2;
  double separation = 4.0;
  std::uint64_t seed = 0;
};

LabeledDataset gen_two_class(const TwoClassSpec& spec);

enum class SourceKind { uniform, laplace };

struct MixedSourcesSpec {
  std::size_t n = 5000;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  /// dim x dim; a random matrix with condition number <= 10 when absent.
  std::optional<Matrix> mixing;
  /// One per column; alternates uniform/laplace when empty.
  std::vector<SourceKind> kinds;
};

struct MixedSources {
  Matrix sources;  // n x dim, each column standardized to mean 0, variance 1
  Matrix mixed;    // sources * mixing^T
  Matrix mixing;
};

MixedSources gen_mixed_sources(const MixedSourcesSpec& spec);

double condition_number(const Matrix& m);

/// Random dim x dim matrix U diag(s) V^T with singular values in
/// [1, max_condition].
Matrix random_mixing(std::size_t dim, double max_condition, std::uint64_t seed);

/// Radar-like windows. Absent: AR(1) Gaussian clutter. Present: the same
/// clutter plus one damped sinusoid
///   a * exp(-(k - delay) / decay) * sin(2 pi f (k - delay)),  k >= delay
/// with delay and amplitude drawn uniformly from their ranges.
struct NlosLikeSpec {
  std::size_t n = 2000;
  std::size_t dim = 256;
  std::uint64_t seed = 0;
  double noise_std = 0.1;
  double noise_correlation = 0.5;
  double amplitude_min = 0.5;
  double amplitude_max = 0.8;
  double frequency = 0.1;
  double decay = 12.0;
  std::size_t delay_min = 32;
  std::size_t delay_max = 160;
};

struct NlosLikeData {
  LabeledDataset data;
  /// Accuracy on `data` of a matched filter (max normalized correlation with
  /// the pulse template over the delay range) whose threshold was tuned on
  /// an independent draw from the same generator.
  double reference_accuracy = 0.0;
  double reference_threshold = 0.0;
};

NlosLikeData gen_nlos_like(const NlosLikeSpec& spec);

/// The matched-filter statistic the reference uses, per window.
std::vector<double> matched_filter_scores(const Matrix& windows, const NlosLikeSpec& spec);

}  // namespace uwbnlos
