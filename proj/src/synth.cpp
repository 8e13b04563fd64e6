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

#include "uwbnlos/synth.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "uwbnlos/error.hpp"
#include "uwbnlos/rng.hpp"

namespace uwbnlos {

namespace {

std::vector<int> balanced_labels(std::size_t n, Rng& rng) {
  std::vector<int> labels(n, kAbsent);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>((n + 1) / 2), kPresent);
  rng.shuffle(labels.begin(), labels.end());
  return labels;
}

// Pulse template starting at `delay`, truncated where the envelope is
// negligible or the window ends.
std::vector<double> pulse_template(const NlosLikeSpec& spec, std::size_t delay) {
  std::vector<double> t;
  for (std::size_t k = delay; k < spec.dim; ++k) {
    const double rel = static_cast<double>(k - delay);
    const double envelope = std::exp(-rel / spec.decay);
    if (envelope < 1e-6) break;
    t.push_back(envelope * std::sin(2.0 * std::numbers::pi * spec.frequency * rel));
  }
  return t;
}

LabeledDataset draw_nlos(const NlosLikeSpec& spec, std::uint64_t seed) {
  Rng noise(seed, Stream::noise);
  Rng delays(seed, Stream::delay);
  Rng amplitudes(seed, Stream::amplitude);
  Rng label_rng(seed, Stream::labels);

  auto labels = balanced_labels(spec.n, label_rng);
  const auto J = static_cast<Eigen::Index>(spec.dim);
  Matrix windows(static_cast<Eigen::Index>(spec.n), J);
  const double rho = spec.noise_correlation;
  const double innovation = spec.noise_std * std::sqrt(1.0 - rho * rho);
  const auto delay_span = spec.delay_max - spec.delay_min + 1;

  for (std::size_t i = 0; i < spec.n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    double e = spec.noise_std * noise.normal();
    windows(r, 0) = e;
    for (Eigen::Index k = 1; k < J; ++k) {
      e = rho * e + innovation * noise.normal();
      windows(r, k) = e;
    }
    // Drawn for every row so the streams stay aligned across labels.
    const auto delay = spec.delay_min + static_cast<std::size_t>(delays.below(delay_span));
    const double amplitude = amplitudes.uniform(spec.amplitude_min, spec.amplitude_max);
    if (labels[i] == kPresent) {
      const auto pulse = pulse_template(spec, delay);
      for (std::size_t k = 0; k < pulse.size(); ++k) {
        windows(r, static_cast<Eigen::Index>(delay + k)) += amplitude * pulse[k];
      }
    }
  }
  return LabeledDataset(std::move(windows), std::move(labels), "synthetic-nlos");
}

double accuracy_at(const std::vector<double>& scores, std::span<const int> labels, double threshold) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const int said = scores[i] > threshold ? kPresent : kAbsent;
    if (said == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(scores.size());
}

// Threshold maximizing accuracy; candidates are midpoints of sorted scores.
double best_threshold(const std::vector<double>& scores, std::span<const int> labels) {
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Everything above -inf is called present.
  std::size_t correct = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kPresent));
  std::size_t best_correct = correct;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < order.size(); ++k) {
    correct += labels[order[k]] == kAbsent ? 1 : 0;
    correct -= labels[order[k]] == kPresent ? 1 : 0;
    if (k + 1 < order.size() && scores[order[k + 1]] == scores[order[k]]) continue;
    if (correct > best_correct) {
      best_correct = correct;
      best = k + 1 < order.size() ? 0.5 * (scores[order[k]] + scores[order[k + 1]])
                                  : std::numeric_limits<double>::infinity();
    }
  }
  return best;
}

}  // namespace

LabeledDataset gen_two_class(const TwoClassSpec& spec) {
  if (spec.n < 2) throw Error(ErrorCode::invalid_argument, "n must be at least 2");
  if (spec.dim < 2) throw Error(ErrorCode::invalid_argument, "dim must be at least 2");
  if (!(spec.separation >= 0.0)) throw Error(ErrorCode::invalid_argument, "separation must be non-negative");
  Rng label_rng(spec.seed, Stream::labels);
  Rng noise(spec.seed, Stream::noise);
  auto labels = balanced_labels(spec.n, label_rng);
  Matrix X(static_cast<Eigen::Index>(spec.n), static_cast<Eigen::Index>(spec.dim));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = noise.normal();
    X(i, 0) += 0.5 * spec.separation * labels[static_cast<std::size_t>(i)];
  }
  return LabeledDataset(std::move(X), std::move(labels), "synthetic-two-class");
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  return smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
}

Matrix random_mixing(std::size_t dim, double max_condition, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::invalid_argument, "dim must be at least 1");
  if (!(max_condition >= 1.0)) throw Error(ErrorCode::invalid_argument, "max_condition must be at least 1");
  Rng rng(seed, Stream::mixing);
  const auto d = static_cast<Eigen::Index>(dim);
  auto orthogonal = [&] {
    Eigen::MatrixXd g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.normal();
    }
    return Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ());
  };
  const Eigen::MatrixXd U = orthogonal();
  const Eigen::MatrixXd V = orthogonal();
  Eigen::VectorXd s(d);
  for (Eigen::Index i = 0; i < d; ++i) s(i) = rng.uniform(1.0, max_condition);
  return U * s.asDiagonal() * V.transpose();
}

MixedSources gen_mixed_sources(const MixedSourcesSpec& spec) {
  if (spec.n < 2) throw Error(ErrorCode::invalid_argument, "n must be at least 2");
  if (spec.dim < 1) throw Error(ErrorCode::invalid_argument, "dim must be at least 1");
  if (!spec.kinds.empty() && spec.kinds.size() != spec.dim) {
    throw Error(ErrorCode::invalid_argument, "one source kind per column required");
  }
  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto d = static_cast<Eigen::Index>(spec.dim);

  MixedSources out;
  out.mixing = spec.mixing ? *spec.mixing : random_mixing(spec.dim, kMaxMixingCondition, spec.seed);
  if (out.mixing.rows() != d || out.mixing.cols() != d) {
    throw Error(ErrorCode::invalid_argument, "mixing must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  const double cond = condition_number(out.mixing);
  if (!(cond <= kMaxMixingCondition * (1.0 + 1e-9))) {
    throw Error(ErrorCode::ill_conditioned_mixing, "condition number " + std::to_string(cond) + " exceeds 10");
  }

  Rng rng(spec.seed, Stream::sources);
  out.sources.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto kind = spec.kinds.empty() ? (j % 2 == 0 ? SourceKind::uniform : SourceKind::laplace)
                                           : spec.kinds[static_cast<std::size_t>(j)];
      out.sources(i, j) = kind == SourceKind::uniform ? rng.uniform(-std::sqrt(3.0), std::sqrt(3.0))
                                                      : rng.laplace(1.0 / std::sqrt(2.0));
    }
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    auto col = out.sources.col(j);
    col.array() -= col.mean();
    col /= std::sqrt(col.squaredNorm() / static_cast<double>(n));
  }
  out.mixed = out.sources * out.mixing.transpose();
  return out;
}

std::vector<double> matched_filter_scores(const Matrix& windows, const NlosLikeSpec& spec) {
  std::vector<std::vector<double>> templates;
  std::vector<double> norms;
  for (std::size_t delay = spec.delay_min; delay <= spec.delay_max; ++delay) {
    auto t = pulse_template(spec, delay);
    double norm = 0.0;
    for (double v : t) norm += v * v;
    norms.push_back(std::sqrt(norm));
    templates.push_back(std::move(t));
  }
  std::vector<double> scores(static_cast<std::size_t>(windows.rows()));
  for (Eigen::Index i = 0; i < windows.rows(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < templates.size(); ++k) {
      const auto delay = static_cast<Eigen::Index>(spec.delay_min + k);
      double dot = 0.0;
      for (std::size_t s = 0; s < templates[k].size(); ++s) {
        dot += windows(i, delay + static_cast<Eigen::Index>(s)) * templates[k][s];
      }
      best = std::max(best, dot / norms[k]);
    }
    scores[static_cast<std::size_t>(i)] = best;
  }
  return scores;
}

NlosLikeData gen_nlos_like(const NlosLikeSpec& spec) {
  if (spec.n < 2) throw Error(ErrorCode::invalid_argument, "n must be at least 2");
  if (spec.dim < 2) throw Error(ErrorCode::invalid_argument, "dim must be at least 2");
  if (spec.delay_min > spec.delay_max || spec.delay_max >= spec.dim) {
    throw Error(ErrorCode::invalid_argument, "delay range must lie inside the window");
  }
  if (!(spec.amplitude_min >= 0.0 && spec.amplitude_max >= spec.amplitude_min)) {
    throw Error(ErrorCode::invalid_argument, "amplitude range must be non-negative and ordered");
  }
  if (!(spec.noise_std > 0.0) || !(std::abs(spec.noise_correlation) < 1.0) || !(spec.decay > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "noise_std and decay must be positive, |noise_correlation| < 1");
  }

  NlosLikeData out{draw_nlos(spec, spec.seed), 0.0, 0.0};
  const auto calibration = draw_nlos(spec, splitmix64(spec.seed ^ static_cast<std::uint64_t>(Stream::calibration)));
  out.reference_threshold =
      best_threshold(matched_filter_scores(calibration.windows(), spec), calibration.labels());
  out.reference_accuracy =
      accuracy_at(matched_filter_scores(out.data.windows(), spec), out.data.labels(), out.reference_threshold);
  return out;
}

}  // namespace uwbnlos
