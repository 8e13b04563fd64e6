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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uwbnlos/adaboost.hpp"
#include "uwbnlos/dataset.hpp"
#include "uwbnlos/features.hpp"
#include "uwbnlos/ica.hpp"
#include "uwbnlos/metrics.hpp"
#include "uwbnlos/scaler.hpp"

namespace uwbnlos {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::size_t kDefaultComponents = 16;

/// Everything a training run needs. Flag names in the CLI map 1:1 onto these
/// fields.
struct RunConfig {
  std::filesystem::path data;
  CsvLayout layout;
  std::string scenario_tag;

  FeatureMode mode = FeatureMode::stats;
  bool ica_enabled = true;
  /// Retained ICA components; min(16, numerical rank of the scaled training
  /// features) when unset.
  std::optional<std::size_t> components;
  Contrast contrast = Contrast::logcosh;
  double tol = 1e-4;
  std::size_t max_iter = 200;

  std::size_t rounds = 50;
  double eps_floor = 1e-10;

  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  bool stratified = true;

  std::filesystem::path out_model;
  std::filesystem::path out_report;
  bool force = false;
  /// Recorded verbatim in the model; empty keeps model files reproducible.
  std::string timestamp;

  /// Throws Error(invalid_argument) on the first violated precondition.
  void validate() const;
  std::size_t resolved_components(std::size_t feature_width, std::size_t feature_rank) const;
};

struct TrainingMeta {
  std::uint64_t seed = 0;
  double train_fraction = 0.7;
  bool stratified = true;
  std::size_t rounds = 0;
  double eps_floor = 0.0;
  std::size_t components = 0;
  std::string contrast;
  double tol = 0.0;
  std::size_t max_iter = 0;
  std::string dataset_fingerprint;  // of the training rows
  std::size_t dropped_row_count = 0;
  std::size_t train_rows = 0;
  std::string scenario_tag;
  std::string timestamp;
};

/// features -> scaler -> (ICA) -> boosted stumps, all fitted on training rows.
struct PipelineModel {
  int schema_version = kSchemaVersion;
  FeatureMode feature_mode = FeatureMode::stats;
  std::size_t window_length = 0;
  std::vector<std::string> feature_columns;
  ScalerModel scaler;
  std::optional<IcaModel> ica;
  BoostModel boost;
  TrainingMeta meta;

  /// Raw windows to classifier inputs. Errors carry the failing stage.
  Matrix transform(const Matrix& windows) const;
  std::vector<Prediction> predict(const Matrix& windows) const;

  /// Dimensional chain and per-module invariants; throws
  /// Error(corrupt_model) naming the first violation.
  void validate() const;
};

PipelineModel fit_pipeline(const LabeledDataset& train, const RunConfig& config);
MetricsReport evaluate(const PipelineModel& model, const LabeledDataset& data);

struct TrainOutcome {
  PipelineModel model;
  MetricsReport test_metrics;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::size_t dropped_row_count = 0;
  std::string report;  // rendered text, also written to out_report
};

/// load -> split -> fit on train -> evaluate on test; writes out_model and
/// out_report when set. Errors are re-thrown with the stage attached.
TrainOutcome run_train(const RunConfig& config);

struct EvaluateOutcome {
  MetricsReport metrics;
  std::size_t rows = 0;
  std::size_t dropped_row_count = 0;
  std::string report;
};

EvaluateOutcome run_evaluate(const std::filesystem::path& model_path, const std::filesystem::path& data_path,
                             const CsvLayout& layout);

struct PredictOutcome {
  std::vector<std::size_t> source_rows;
  std::vector<Prediction> predictions;
  std::size_t dropped_row_count = 0;
};

PredictOutcome run_predict(const std::filesystem::path& model_path, const std::filesystem::path& data_path,
                           bool has_header);

}  // namespace uwbnlos
