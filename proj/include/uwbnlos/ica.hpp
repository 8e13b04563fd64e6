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
#include <functional>
#include <string_view>
#include <vector>

#include "uwbnlos/matrix.hpp"

namespace uwbnlos {

/// Non-Gaussianity contrast used by FastICA.
///   logcosh  G(u) = log cosh u, g = tanh u, g' = 1 - tanh^2 u
///   cube     G(u) = u^4 / 4,    g = u^3,    g' = 3 u^2   (kurtosis)
enum class Contrast { logcosh, cube };

std::string_view to_string(Contrast contrast);
Contrast contrast_from_string(std::string_view text);

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double kRankTolerance = 1e-10;
/// Max-abs deviation of the input covariance from identity that fastica_fit
/// still accepts as whitened.
inline constexpr double kWhitenedTolerance = 0.1;

/// Centering plus projection onto the leading principal directions, scaled
/// so the projected training data has identity (population) covariance.
struct WhiteningModel {
  Vector center;      // D
  Matrix projection;  // C x D

  std::size_t components() const { return static_cast<std::size_t>(projection.rows()); }
  std::size_t input_dims() const { return static_cast<std::size_t>(center.size()); }
};

/// Rank of the centered data, with the tolerance whitening uses.
std::size_t numerical_rank(const Matrix& X);

WhiteningModel whiten_fit(const Matrix& X, std::size_t n_components);
Matrix whiten_transform(const WhiteningModel& model, const Matrix& X);

struct FastIcaOptions {
  Contrast contrast = Contrast::logcosh;
  double tol = 1e-4;
  std::size_t max_iter = 200;
  std::uint64_t seed = 0;
  /// Called with the unmixing matrix after every symmetric decorrelation,
  /// including the one applied to the random start (iteration 0).
  std::function<void(std::size_t iteration, const Matrix& unmixing)> on_decorrelate;
};

struct UnmixingModel {
  Matrix unmixing;  // C x C, orthonormal rows
  Contrast contrast = Contrast::logcosh;
  std::size_t iterations_used = 0;
  bool converged = false;
  /// Output column k is unmixing row component_order[k]; sorted by descending
  /// non-Gaussianity score on the fitting data.
  std::vector<std::size_t> component_order;

  std::size_t components() const { return static_cast<std::size_t>(unmixing.rows()); }
};

/// Parallel FastICA with symmetric decorrelation on already whitened rows.
UnmixingModel fastica_fit(const Matrix& whitened, const FastIcaOptions& options);

/// Squared distance of E[G(y)] from its value under a standard Gaussian, per
/// column of `components`.
std::vector<double> nongaussianity(const Matrix& components, Contrast contrast);

/// W <- (W W^T)^{-1/2} W
Matrix symmetric_decorrelation(const Matrix& W);

struct IcaModel {
  WhiteningModel whitening;
  UnmixingModel unmixing;

  std::size_t input_dims() const { return whitening.input_dims(); }
  std::size_t components() const { return whitening.components(); }
};

IcaModel ica_fit(const Matrix& X, std::size_t n_components, const FastIcaOptions& options);
Matrix ica_transform(const IcaModel& model, const Matrix& X);

}  // namespace uwbnlos
