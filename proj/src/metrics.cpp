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

#include "uwbnlos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "uwbnlos/error.hpp"

namespace uwbnlos {

namespace {

struct Ratio {
  double value;
  bool undefined;
};

Ratio ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return {0.0, true};
  return {static_cast<double>(num) / static_cast<double>(den), false};
}

}  // namespace

std::string_view display_name(Metric metric) {
  switch (metric) {
    case Metric::sensitivity: return "Sensitivity";
    case Metric::specificity: return "Specificity";
    case Metric::precision: return "Precision";
    case Metric::npv: return "Negative Predictive Value";
    case Metric::accuracy: return "Accuracy";
    case Metric::f1: return "F1 Score";
    case Metric::mcc: return "Matthews Correlation Coefficient";
  }
  return "";
}

std::string_view key(Metric metric) {
  switch (metric) {
    case Metric::sensitivity: return "sensitivity";
    case Metric::specificity: return "specificity";
    case Metric::precision: return "precision";
    case Metric::npv: return "npv";
    case Metric::accuracy: return "accuracy";
    case Metric::f1: return "f1";
    case Metric::mcc: return "mcc";
  }
  return "";
}

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::length_mismatch, std::to_string(truth.size()) + " labels vs " +
                                                std::to_string(predicted.size()) + " predictions");
  }
  if (truth.empty()) throw Error(ErrorCode::empty_data, "no labels to compare");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] > 0;
    const bool said = predicted[i] > 0;
    if (actual && said) ++cm.tp;
    else if (actual) ++cm.fn;
    else if (said) ++cm.fp;
    else ++cm.tn;
  }
  return cm;
}

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorCode::empty_data, "confusion matrix has no entries");
  MetricsReport r;
  r.counts = cm;
  auto put = [&r](Metric m, Ratio v) {
    r.values[static_cast<std::size_t>(m)] = v.value;
    r.undefined[static_cast<std::size_t>(m)] = v.undefined;
  };
  const auto sens = ratio(cm.tp, cm.tp + cm.fn);
  const auto prec = ratio(cm.tp, cm.tp + cm.fp);
  put(Metric::accuracy, ratio(cm.tp + cm.tn, cm.total()));
  put(Metric::sensitivity, sens);
  put(Metric::specificity, ratio(cm.tn, cm.fp + cm.tn));
  put(Metric::precision, prec);
  put(Metric::npv, ratio(cm.tn, cm.tn + cm.fn));

  if (sens.undefined || prec.undefined || sens.value + prec.value == 0.0) {
    put(Metric::f1, {0.0, true});
  } else {
    put(Metric::f1, {2.0 * prec.value * sens.value / (prec.value + sens.value), false});
  }

  const std::uint64_t a = cm.tp + cm.fp;
  const std::uint64_t b = cm.tp + cm.fn;
  const std::uint64_t c = cm.tn + cm.fp;
  const std::uint64_t d = cm.tn + cm.fn;
  if (a == 0 || b == 0 || c == 0 || d == 0) {
    put(Metric::mcc, {0.0, true});
  } else {
    // Extended precision keeps perfect and fully inverted matrices at exactly +-1.
    const long double num = static_cast<long double>(cm.tp) * static_cast<long double>(cm.tn) -
                            static_cast<long double>(cm.fp) * static_cast<long double>(cm.fn);
    const long double den = std::sqrt(static_cast<long double>(a) * static_cast<long double>(b) *
                                      static_cast<long double>(c) * static_cast<long double>(d));
    put(Metric::mcc, {static_cast<double>(std::clamp(num / den, -1.0L, 1.0L)), false});
  }
  return r;
}

std::vector<ConfusionMatrix> reconstruct_cm(const ReconstructQuery& q) {
  if (q.n_min > q.n_max) throw Error(ErrorCode::invalid_argument, "n_min exceeds n_max");
  if (!(q.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tol must be positive");

  const double scale = q.decimals ? std::pow(10.0, *q.decimals) : 1.0;
  auto as_reported = [&](double fraction) {
    const double pct = 100.0 * fraction;
    return q.decimals ? std::round(pct * scale) / scale : pct;
  };
  auto matches = [&](const ConfusionMatrix& cm) {
    const auto r = compute_metrics(cm);
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      if (!(std::abs(as_reported(r.values[k]) - q.targets[k]) <= q.tol)) return false;
    }
    return true;
  };
  // Fraction-scale slack for pruning: tolerance plus half a reporting unit,
  // plus one count either side when converting to integer bounds.
  const double slack = (q.tol + (q.decimals ? 0.5 / scale : 0.0)) / 100.0;
  auto candidates = [&](double target_pct, std::uint64_t den) {
    const double target = target_pct / 100.0;
    const double lo = std::floor((target - slack) * static_cast<double>(den)) - 1.0;
    const double hi = std::ceil((target + slack) * static_cast<double>(den)) + 1.0;
    const auto first = static_cast<std::uint64_t>(std::max(0.0, lo));
    const auto last = static_cast<std::uint64_t>(std::clamp(hi, 0.0, static_cast<double>(den)));
    return std::pair{first, last};
  };

  const double sens_t = q.targets[static_cast<std::size_t>(Metric::sensitivity)];
  const double spec_t = q.targets[static_cast<std::size_t>(Metric::specificity)];
  const double acc_t = q.targets[static_cast<std::size_t>(Metric::accuracy)];

  std::vector<ConfusionMatrix> found;
  for (std::uint64_t n = std::max<std::uint64_t>(q.n_min, 1); n <= q.n_max; ++n) {
    // Correct predictions are pinned by accuracy.
    const auto [c_lo, c_hi] = candidates(acc_t, n);
    for (std::uint64_t p = 0; p <= n; ++p) {
      const std::uint64_t neg = n - p;
      const auto [tp_lo, tp_hi] = p == 0 ? std::pair<std::uint64_t, std::uint64_t>{0, 0} : candidates(sens_t, p);
      const auto [tn_lo, tn_hi] = neg == 0 ? std::pair<std::uint64_t, std::uint64_t>{0, 0} : candidates(spec_t, neg);
      if (tp_lo + tn_lo > c_hi || tp_hi + tn_hi < c_lo) continue;
      for (std::uint64_t tp = tp_lo; tp <= tp_hi; ++tp) {
        for (std::uint64_t tn = tn_lo; tn <= tn_hi; ++tn) {
          if (tp + tn < c_lo || tp + tn > c_hi) continue;
          const ConfusionMatrix cm{tp, neg - tn, tn, p - tp};
          if (matches(cm)) found.push_back(cm);
        }
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const ConfusionMatrix& x, const ConfusionMatrix& y) {
    return std::tuple(x.total(), x.tp, x.fp, x.tn, x.fn) < std::tuple(y.total(), y.tp, y.fp, y.tn, y.fn);
  });
  return found;
}

}  // namespace uwbnlos
