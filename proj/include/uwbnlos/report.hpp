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

#include <optional>
#include <string>

#include "uwbnlos/metrics.hpp"
#include "uwbnlos/pipeline.hpp"

namespace uwbnlos {

struct ReportContext {
  std::string title;
  std::optional<std::size_t> train_rows;
  std::size_t evaluated_rows = 0;
  std::size_t dropped_row_count = 0;
  const PipelineModel* model = nullptr;
};

/// Percent with two decimals, e.g. 0.88372 -> "88.37".
std::string format_percent(double fraction);

/// The seven indicators as a fixed-width table.
std::string render_metrics_table(const MetricsReport& metrics);

/// Human-readable table followed by a machine-readable CSV block delimited by
/// "# csv-begin" / "# csv-end". Discloses counts, undefined-rate flags, data
/// loss, hyperparameters, stop reason and ICA convergence.
std::string render_report(const MetricsReport& metrics, const ReportContext& context);

}  // namespace uwbnlos
