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

#include "uwbnlos/report.hpp"

#include <cstdio>
#include <sstream>

namespace uwbnlos {

namespace {

constexpr std::array<Metric, kMetricCount> kOrder{Metric::sensitivity, Metric::specificity, Metric::precision,
                                                  Metric::npv,         Metric::accuracy,    Metric::f1,
                                                  Metric::mcc};

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * fraction);
  return buf;
}

std::string render_metrics_table(const MetricsReport& metrics) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-34s %10s\n", "Measurement metrics", "Value (%)");
  out << line;
  for (auto m : kOrder) {
    std::string value = format_percent(metrics[m]);
    if (metrics.is_undefined(m)) value += " *";
    std::snprintf(line, sizeof line, "%-34s %10s\n", std::string(display_name(m)).c_str(), value.c_str());
    out << line;
  }
  return out.str();
}

std::string render_report(const MetricsReport& metrics, const ReportContext& ctx) {
  std::ostringstream out;
  const auto& cm = metrics.counts;
  out << "Results for this configuration";
  if (!ctx.title.empty()) out << " (" << ctx.title << ")";
  out << "\n\n" << render_metrics_table(metrics);

  bool any_undefined = false;
  for (bool u : metrics.undefined) any_undefined |= u;
  if (any_undefined) out << "  * undefined (zero denominator), reported as 0.00\n";

  out << "\nConfusion matrix (positive = person present)\n"
      << "  TP " << cm.tp << "  FN " << cm.fn << "\n"
      << "  FP " << cm.fp << "  TN " << cm.tn << "\n\n";

  if (ctx.train_rows) out << "train rows:        " << *ctx.train_rows << "\n";
  out << "evaluated rows:    " << ctx.evaluated_rows << "\n"
      << "dropped rows:      " << ctx.dropped_row_count << "\n";

  if (const auto* m = ctx.model) {
    const auto& t = m->meta;
    out << "feature mode:      " << to_string(m->feature_mode) << " (window length " << m->window_length << ")\n"
        << "ica:               ";
    if (m->ica) {
      out << "on, " << m->ica->components() << " components, contrast " << to_string(m->ica->unmixing.contrast)
          << ", converged " << (m->ica->unmixing.converged ? "yes" : "no") << " after "
          << m->ica->unmixing.iterations_used << " iterations (tol " << fmt_double(t.tol) << ", max_iter "
          << t.max_iter << ")\n";
    } else {
      out << "off\n";
    }
    out << "boosting:          " << m->boost.rounds_used() << " of " << m->boost.rounds_requested
        << " rounds, stop reason " << to_string(m->boost.stop_reason) << ", eps_floor " << fmt_double(t.eps_floor)
        << ", sign(0) = +1\n"
        << "split:             train_fraction " << fmt_double(t.train_fraction) << ", seed " << t.seed
        << (t.stratified ? ", stratified" : ", unstratified") << "\n";
    if (!t.scenario_tag.empty()) out << "scenario:          " << t.scenario_tag << "\n";
  }

  out << "\n# csv-begin\nfield,value,undefined\n";
  for (auto m : kOrder) {
    out << key(m) << ',' << format_percent(metrics[m]) << ',' << (metrics.is_undefined(m) ? 1 : 0) << '\n';
  }
  out << "tp," << cm.tp << ",0\nfp," << cm.fp << ",0\ntn," << cm.tn << ",0\nfn," << cm.fn << ",0\n";
  if (ctx.train_rows) out << "train_rows," << *ctx.train_rows << ",0\n";
  out << "evaluated_rows," << ctx.evaluated_rows << ",0\n"
      << "dropped_row_count," << ctx.dropped_row_count << ",0\n";
  if (const auto* m = ctx.model) {
    const auto& t = m->meta;
    out << "feature_mode," << to_string(m->feature_mode) << ",0\n"
        << "ica," << (m->ica ? "on" : "off") << ",0\n";
    if (m->ica) {
      out << "n_components," << m->ica->components() << ",0\n"
          << "contrast," << to_string(m->ica->unmixing.contrast) << ",0\n"
          << "converged," << (m->ica->unmixing.converged ? 1 : 0) << ",0\n"
          << "ica_iterations," << m->ica->unmixing.iterations_used << ",0\n"
          << "tol," << fmt_double(t.tol) << ",0\n"
          << "max_iter," << t.max_iter << ",0\n";
    }
    out << "rounds_requested," << m->boost.rounds_requested << ",0\n"
        << "rounds_used," << m->boost.rounds_used() << ",0\n"
        << "stop_reason," << to_string(m->boost.stop_reason) << ",0\n"
        << "eps_floor," << fmt_double(t.eps_floor) << ",0\n"
        << "train_fraction," << fmt_double(t.train_fraction) << ",0\n"
        << "seed," << t.seed << ",0\n"
        << "stratified," << (t.stratified ? 1 : 0) << ",0\n";
  }
  out << "# csv-end\n";
  return out.str();
}

}  // namespace uwbnlos
