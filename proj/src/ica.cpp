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

#include "uwbnlos/ica.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uwbnlos/error.hpp"
#include "uwbnlos/rng.hpp"

namespace uwbnlos {

namespace {

// E[log cosh v] for v ~ N(0, 1), by quadrature.
constexpr double kGaussianLogcosh = 0.37456720749143807;
// E[v^4 / 4] for v ~ N(0, 1).
constexpr double kGaussianQuartic = 0.75;

double logcosh(double u) {
  const double a = std::abs(u);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

// Flip each row so its largest-magnitude entry is positive.
void canonicalize_signs(Matrix& W) {
  for (Eigen::Index r = 0; r < W.rows(); ++r) {
    Eigen::Index arg = 0;
    W.row(r).cwiseAbs().maxCoeff(&arg);
    if (W(r, arg) < 0) W.row(r) *= -1.0;
  }
}

}  // namespace

std::string_view to_string(Contrast contrast) { return contrast == Contrast::logcosh ? "logcosh" : "cube"; }

Contrast contrast_from_string(std::string_view text) {
  if (text == "logcosh") return Contrast::logcosh;
  if (text == "cube") return Contrast::cube;
  throw Error(ErrorCode::invalid_argument, "unknown contrast '" + std::string(text) + "'");
}

std::size_t numerical_rank(const Matrix& X) {
  if (X.rows() < 2 || X.cols() < 1) return 0;
  const Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(centered);
  const auto& s = svd.singularValues();
  if (!(s(0) > 0.0)) return 0;
  std::size_t rank = 0;
  for (Eigen::Index c = 0; c < s.size(); ++c) rank += s(c) >= kRankTolerance * s(0) ? 1 : 0;
  return rank;
}

WhiteningModel whiten_fit(const Matrix& X, std::size_t n_components) {
  const auto n = X.rows();
  const auto D = static_cast<std::size_t>(X.cols());
  if (n < 2) throw Error(ErrorCode::invalid_argument, "whitening needs at least 2 rows");
  if (n_components < 1 || n_components > D) {
    throw Error(ErrorCode::invalid_argument,
                "n_components must be in [1, " + std::to_string(D) + "], got " + std::to_string(n_components));
  }
  if (n_components > static_cast<std::size_t>(n - 1)) {
    throw Error(ErrorCode::rank_deficient, "centered data with " + std::to_string(n) + " rows has rank at most " +
                                               std::to_string(n - 1));
  }

  WhiteningModel model;
  model.center = X.colwise().mean().transpose();
  const Eigen::MatrixXd centered = X.rowwise() - model.center.transpose();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const auto C = static_cast<Eigen::Index>(n_components);
  if (s(0) <= 0.0 || s(C - 1) < kRankTolerance * s(0)) {
    throw Error(ErrorCode::rank_deficient, "requested " + std::to_string(n_components) +
                                               " components but the data's numerical rank is lower");
  }

  const double root_n = std::sqrt(static_cast<double>(n));
  model.projection.resize(C, X.cols());
  for (Eigen::Index c = 0; c < C; ++c) {
    model.projection.row(c) = svd.matrixV().col(c).transpose() * (root_n / s(c));
  }
  canonicalize_signs(model.projection);
  return model;
}

Matrix whiten_transform(const WhiteningModel& model, const Matrix& X) {
  if (static_cast<std::size_t>(X.cols()) != model.input_dims()) {
    throw Error(ErrorCode::dimension_mismatch, "whitening expects " + std::to_string(model.input_dims()) +
                                                   " columns, got " + std::to_string(X.cols()));
  }
  return (X.rowwise() - model.center.transpose()) * model.projection.transpose();
}

Matrix symmetric_decorrelation(const Matrix& W) {
  const Eigen::MatrixXd gram = W * W.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::MatrixXd& E = eig.eigenvectors();
  const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().cwiseInverse();
  return E * inv_sqrt.asDiagonal() * E.transpose() * W;
}

std::vector<double> nongaussianity(const Matrix& components, Contrast contrast) {
  std::vector<double> scores(static_cast<std::size_t>(components.cols()));
  const double n = static_cast<double>(components.rows());
  for (Eigen::Index c = 0; c < components.cols(); ++c) {
    double mean_g = 0.0;
    for (Eigen::Index i = 0; i < components.rows(); ++i) {
      const double u = components(i, c);
      mean_g += contrast == Contrast::logcosh ? logcosh(u) : 0.25 * u * u * u * u;
    }
    mean_g /= n;
    const double d = mean_g - (contrast == Contrast::logcosh ? kGaussianLogcosh : kGaussianQuartic);
    scores[static_cast<std::size_t>(c)] = d * d;
  }
  return scores;
}

UnmixingModel fastica_fit(const Matrix& whitened, const FastIcaOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tol must be positive");
  if (options.max_iter < 1) throw Error(ErrorCode::invalid_argument, "max_iter must be at least 1");
  const auto n = whitened.rows();
  const auto C = whitened.cols();
  if (n < 2 || C < 1) throw Error(ErrorCode::empty_matrix, "FastICA needs at least 2 rows and 1 column");

  const double inv_n = 1.0 / static_cast<double>(n);
  const Eigen::MatrixXd cov = whitened.transpose() * whitened * inv_n;
  const double deviation = (cov - Eigen::MatrixXd::Identity(C, C)).cwiseAbs().maxCoeff();
  if (!(deviation <= kWhitenedTolerance)) {
    throw Error(ErrorCode::not_whitened,
                "input covariance deviates from identity by " + std::to_string(deviation) + "; whiten first");
  }

  Rng rng(options.seed, Stream::ica_init);
  Matrix W(C, C);
  for (Eigen::Index r = 0; r < C; ++r) {
    for (Eigen::Index c = 0; c < C; ++c) W(r, c) = rng.normal();
  }
  W = symmetric_decorrelation(W);
  if (options.on_decorrelate) options.on_decorrelate(0, W);

  UnmixingModel model;
  model.contrast = options.contrast;
  Eigen::MatrixXd G(n, C);
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    const Eigen::MatrixXd Y = whitened * W.transpose();
    Eigen::VectorXd mean_dg = Eigen::VectorXd::Zero(C);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index c = 0; c < C; ++c) {
        const double u = Y(i, c);
        if (options.contrast == Contrast::logcosh) {
          const double t = std::tanh(u);
          G(i, c) = t;
          mean_dg(c) += 1.0 - t * t;
        } else {
          G(i, c) = u * u * u;
          mean_dg(c) += 3.0 * u * u;
        }
      }
    }
    mean_dg *= inv_n;
    Matrix next = (G.transpose() * whitened) * inv_n;
    next -= mean_dg.asDiagonal() * W;
    next = symmetric_decorrelation(next);
    if (options.on_decorrelate) options.on_decorrelate(it, next);

    const double change = ((next * W.transpose()).diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff();
    W = std::move(next);
    model.iterations_used = it;
    if (change < options.tol) {
      model.converged = true;
      break;
    }
  }

  canonicalize_signs(W);
  const auto scores = nongaussianity(whitened * W.transpose(), options.contrast);
  model.component_order.resize(static_cast<std::size_t>(C));
  std::iota(model.component_order.begin(), model.component_order.end(), std::size_t{0});
  std::stable_sort(model.component_order.begin(), model.component_order.end(),
                   [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  model.unmixing = std::move(W);
  return model;
}

IcaModel ica_fit(const Matrix& X, std::size_t n_components, const FastIcaOptions& options) {
  IcaModel model;
  model.whitening = whiten_fit(X, n_components);
  model.unmixing = fastica_fit(whiten_transform(model.whitening, X), options);
  return model;
}

Matrix ica_transform(const IcaModel& model, const Matrix& X) {
  const Matrix sources = whiten_transform(model.whitening, X) * model.unmixing.unmixing.transpose();
  Matrix out(sources.rows(), sources.cols());
  for (std::size_t k = 0; k < model.unmixing.component_order.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = sources.col(static_cast<Eigen::Index>(model.unmixing.component_order[k]));
  }
  return out;
}

}  // namespace uwbnlos
