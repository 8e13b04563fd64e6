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

#include "uwbnlos/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <utility>

#include "uwbnlos/error.hpp"
#include "uwbnlos/model_io.hpp"
#include "uwbnlos/report.hpp"

namespace uwbnlos {

namespace {

template <typename F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.at_stage(stage);
  }
}

std::vector<int> labels_of(const std::vector<Prediction>& predictions) {
  std::vector<int> out;
  out.reserve(predictions.size());
  for (const auto& p : predictions) out.push_back(p.label);
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::file_unreadable, "cannot write " + path.string());
  out << text;
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::invalid_argument, msg, "config"); };
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail("--train-frac must lie strictly between 0 and 1");
  if (rounds < 1) fail("--rounds must be at least 1");
  if (!(eps_floor > 0.0 && eps_floor < 0.5)) fail("--eps-floor must lie in (0, 0.5)");
  if (!(tol > 0.0)) fail("--tol must be positive");
  if (max_iter < 1) fail("--max-iter must be at least 1");
  if (components && *components < 1) fail("--components must be at least 1");
}

std::size_t RunConfig::resolved_components(std::size_t feature_width, std::size_t feature_rank) const {
  const auto c = components.value_or(std::max<std::size_t>(1, std::min(kDefaultComponents, feature_rank)));
  if (c > feature_width) {
    throw Error(ErrorCode::invalid_argument,
                "--components " + std::to_string(c) + " exceeds the feature width " + std::to_string(feature_width),
                "config");
  }
  return c;
}

Matrix PipelineModel::transform(const Matrix& windows) const {
  if (static_cast<std::size_t>(windows.cols()) != window_length) {
    throw Error(ErrorCode::dimension_mismatch,
                "model expects windows of " + std::to_string(window_length) + " samples, got " +
                    std::to_string(windows.cols()),
                "features/scaler");
  }
  Matrix scaled = staged("features/scaler", [&] {
    return scaler_transform(scaler, extract_features(feature_mode, windows).values);
  });
  if (!ica) return scaled;
  return staged("ica", [&] { return ica_transform(*ica, scaled); });
}

std::vector<Prediction> PipelineModel::predict(const Matrix& windows) const {
  const Matrix inputs = transform(windows);
  return staged("boost", [&] { return adaboost_predict(boost, inputs); });
}

void PipelineModel::validate() const {
  auto corrupt = [](const std::string& msg) { throw Error(ErrorCode::corrupt_model, msg); };
  if (window_length < 2) corrupt("window_length must be at least 2");
  const auto width = feature_width(feature_mode, window_length);
  if (feature_columns.size() != width) corrupt("feature_columns does not match the feature mode width");
  if (scaler.dims() != width || static_cast<std::size_t>(scaler.stds.size()) != width ||
      scaler.constant_mask.size() != width) {
    corrupt("scaler width does not match the feature width");
  }
  for (std::size_t d = 0; d < width; ++d) {
    const double s = scaler.stds(static_cast<Eigen::Index>(d));
    if (!(s >= 0.0) || !std::isfinite(scaler.means(static_cast<Eigen::Index>(d)))) corrupt("invalid scaler entry");
    if (scaler.constant_mask[d] != (s < kConstantColumnStd)) corrupt("constant_mask disagrees with stds");
  }
  std::size_t classifier_width = width;
  if (ica) {
    const auto C = ica->components();
    if (ica->input_dims() != width || static_cast<std::size_t>(ica->whitening.projection.cols()) != width) {
      corrupt("ICA input width does not match the scaler width");
    }
    if (C < 1 || ica->unmixing.components() != C || static_cast<std::size_t>(ica->unmixing.unmixing.cols()) != C) {
      corrupt("unmixing matrix must be C x C");
    }
    auto order = ica->unmixing.component_order;
    std::sort(order.begin(), order.end());
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (order[k] != k) corrupt("component_order is not a permutation");
    }
    if (order.size() != C) corrupt("component_order is not a permutation");
    classifier_width = C;
  }
  if (boost.n_features != classifier_width) corrupt("classifier width does not match its input");
  if (boost.stumps.empty()) corrupt("classifier has no stumps");
  if (boost.stumps.size() != boost.alphas.size()) corrupt("stumps and alphas differ in length");
  if (boost.stumps.size() > boost.rounds_requested) corrupt("more stumps than requested rounds");
  for (std::size_t t = 0; t < boost.stumps.size(); ++t) {
    const auto& s = boost.stumps[t];
    if (s.feature_index >= classifier_width) corrupt("stump feature_index out of range");
    if (s.polarity != 1 && s.polarity != -1) corrupt("stump polarity must be +1 or -1");
    if (std::isnan(s.threshold)) corrupt("stump threshold is NaN");
    if (!(boost.alphas[t] > 0.0) || !std::isfinite(boost.alphas[t])) corrupt("alphas must be positive and finite");
  }
}

PipelineModel fit_pipeline(const LabeledDataset& train, const RunConfig& config) {
  config.validate();
  if (train.empty()) throw Error(ErrorCode::empty_dataset, "no training rows", "split");

  PipelineModel model;
  model.feature_mode = config.mode;
  model.window_length = train.window_length();

  auto features = staged("features", [&] { return extract_features(config.mode, train.windows()); });
  model.feature_columns = features.columns;
  model.scaler = staged("scaler", [&] { return scaler_fit(features.values); });
  Matrix inputs = scaler_transform(model.scaler, features.values);

  std::size_t components = 0;
  if (config.ica_enabled) {
    components = config.resolved_components(features.cols(), config.components ? 0 : numerical_rank(inputs));
    FastIcaOptions options;
    options.contrast = config.contrast;
    options.tol = config.tol;
    options.max_iter = config.max_iter;
    options.seed = config.seed;
    model.ica = staged("ica", [&] { return ica_fit(inputs, components, options); });
    inputs = ica_transform(*model.ica, inputs);
  }

  BoostOptions boost_options;
  boost_options.rounds = config.rounds;
  boost_options.eps_floor = config.eps_floor;
  model.boost = staged("boost", [&] { return adaboost_train(inputs, train.labels(), boost_options); });

  auto& meta = model.meta;
  meta.seed = config.seed;
  meta.train_fraction = config.train_fraction;
  meta.stratified = config.stratified;
  meta.rounds = config.rounds;
  meta.eps_floor = config.eps_floor;
  meta.components = components;
  meta.contrast = std::string(to_string(config.contrast));
  meta.tol = config.tol;
  meta.max_iter = config.max_iter;
  meta.dataset_fingerprint = train.fingerprint();
  meta.dropped_row_count = train.dropped_row_count();
  meta.train_rows = train.size();
  meta.scenario_tag = train.scenario_tag();
  meta.timestamp = config.timestamp;
  return model;
}

MetricsReport evaluate(const PipelineModel& model, const LabeledDataset& data) {
  const auto predictions = model.predict(data.windows());
  return staged("evaluate", [&] { return compute_metrics(confusion(data.labels(), labels_of(predictions))); });
}

TrainOutcome run_train(const RunConfig& config) {
  config.validate();
  if (!config.out_model.empty() && !config.force && std::filesystem::exists(config.out_model)) {
    throw Error(ErrorCode::output_exists, config.out_model.string() + " exists; pass --force to overwrite", "save");
  }
  const auto all = staged("load", [&] { return load_csv(config.data, config.layout, config.scenario_tag); });
  const SplitSpec split{config.train_fraction, config.seed, config.stratified};
  auto [train, test] = staged("split", [&] { return stratified_split(all, split); });
  if (test.empty()) throw Error(ErrorCode::invalid_argument, "the test split is empty", "split");

  TrainOutcome out;
  out.model = fit_pipeline(train, config);
  out.model.meta.dropped_row_count = all.dropped_row_count();
  out.test_metrics = evaluate(out.model, test);
  out.train_rows = train.size();
  out.test_rows = test.size();
  out.dropped_row_count = all.dropped_row_count();

  ReportContext ctx;
  ctx.title = "held-out evaluation";
  ctx.train_rows = out.train_rows;
  ctx.evaluated_rows = out.test_rows;
  ctx.dropped_row_count = out.dropped_row_count;
  ctx.model = &out.model;
  out.report = render_report(out.test_metrics, ctx);

  if (!config.out_model.empty()) {
    staged("save", [&] { save_model(out.model, config.out_model, config.force); });
  }
  if (!config.out_report.empty()) staged("save", [&] { write_text(config.out_report, out.report); });
  return out;
}

EvaluateOutcome run_evaluate(const std::filesystem::path& model_path, const std::filesystem::path& data_path,
                             const CsvLayout& layout) {
  const auto model = staged("model", [&] { return load_model(model_path); });
  const auto data = staged("load", [&] { return load_csv(data_path, layout); });
  EvaluateOutcome out;
  out.metrics = evaluate(model, data);
  out.rows = data.size();
  out.dropped_row_count = data.dropped_row_count();
  ReportContext ctx;
  ctx.title = "evaluation of " + data_path.filename().string();
  ctx.evaluated_rows = out.rows;
  ctx.dropped_row_count = out.dropped_row_count;
  ctx.model = &model;
  out.report = render_report(out.metrics, ctx);
  return out;
}

PredictOutcome run_predict(const std::filesystem::path& model_path, const std::filesystem::path& data_path,
                           bool has_header) {
  const auto model = staged("model", [&] { return load_model(model_path); });
  auto windows = staged("load", [&] { return load_unlabeled_csv(data_path, has_header); });
  PredictOutcome out;
  out.predictions = model.predict(windows.windows);
  out.source_rows = std::move(windows.source_rows);
  out.dropped_row_count = windows.dropped_row_count;
  return out;
}

}  // namespace uwbnlos
