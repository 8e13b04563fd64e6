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

#include "uwbnlos/model_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "uwbnlos/error.hpp"

namespace uwbnlos {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(ErrorCode::corrupt_model, "matrix data length does not match its shape");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = data.at(static_cast<std::size_t>(i * cols + c)).get<double>();
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json threshold_to_json(double t) {
  if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
  return t;
}

double threshold_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::corrupt_model, "unrecognized threshold '" + s + "'");
  }
  return j.get<double>();
}

json to_json(const PipelineModel& m) {
  json scaler = {
      {"means", vector_to_json(m.scaler.means)},
      {"stds", vector_to_json(m.scaler.stds)},
      {"constant_mask", m.scaler.constant_mask},
  };

  json ica = nullptr;
  if (m.ica) {
    const auto& u = m.ica->unmixing;
    ica = {
        {"center", vector_to_json(m.ica->whitening.center)},
        {"projection", matrix_to_json(m.ica->whitening.projection)},
        {"unmixing", matrix_to_json(u.unmixing)},
        {"contrast", std::string(to_string(u.contrast))},
        {"component_order", u.component_order},
        {"converged", u.converged},
        {"iterations_used", u.iterations_used},
    };
  }

  json stumps = json::array();
  for (std::size_t t = 0; t < m.boost.stumps.size(); ++t) {
    const auto& s = m.boost.stumps[t];
    stumps.push_back({
        {"feature_index", s.feature_index},
        {"threshold", threshold_to_json(s.threshold)},
        {"polarity", s.polarity},
        {"alpha", m.boost.alphas[t]},
        {"weighted_error", s.weighted_error},
    });
  }
  json boost = {
      {"stumps", std::move(stumps)},
      {"rounds_requested", m.boost.rounds_requested},
      {"rounds_used", m.boost.rounds_used()},
      {"stop_reason", std::string(to_string(m.boost.stop_reason))},
      {"n_features", m.boost.n_features},
  };

  const auto& t = m.meta;
  json meta = {
      {"seed", t.seed},
      {"train_fraction", t.train_fraction},
      {"stratified", t.stratified},
      {"rounds", t.rounds},
      {"eps_floor", t.eps_floor},
      {"n_components", t.components},
      {"contrast", t.contrast},
      {"tol", t.tol},
      {"max_iter", t.max_iter},
      {"dataset_fingerprint", t.dataset_fingerprint},
      {"dropped_row_count", t.dropped_row_count},
      {"train_rows", t.train_rows},
      {"scenario_tag", t.scenario_tag},
      {"timestamp", t.timestamp},
  };

  return {
      {"schema_version", m.schema_version},
      {"feature_mode", std::string(to_string(m.feature_mode))},
      {"window_length", m.window_length},
      {"feature_columns", m.feature_columns},
      {"scaler", std::move(scaler)},
      {"ica", std::move(ica)},
      {"boost", std::move(boost)},
      {"training_meta", std::move(meta)},
  };
}

PipelineModel from_json(const json& j) {
  PipelineModel m;
  m.schema_version = j.at("schema_version").get<int>();
  m.feature_mode = feature_mode_from_string(j.at("feature_mode").get<std::string>());
  m.window_length = j.at("window_length").get<std::size_t>();
  m.feature_columns = j.at("feature_columns").get<std::vector<std::string>>();

  const auto& s = j.at("scaler");
  m.scaler.means = vector_from_json(s.at("means"));
  m.scaler.stds = vector_from_json(s.at("stds"));
  m.scaler.constant_mask = s.at("constant_mask").get<std::vector<bool>>();

  const auto& ica = j.at("ica");
  if (!ica.is_null()) {
    IcaModel model;
    model.whitening.center = vector_from_json(ica.at("center"));
    model.whitening.projection = matrix_from_json(ica.at("projection"));
    model.unmixing.unmixing = matrix_from_json(ica.at("unmixing"));
    model.unmixing.contrast = contrast_from_string(ica.at("contrast").get<std::string>());
    model.unmixing.component_order = ica.at("component_order").get<std::vector<std::size_t>>();
    model.unmixing.converged = ica.at("converged").get<bool>();
    model.unmixing.iterations_used = ica.at("iterations_used").get<std::size_t>();
    m.ica = std::move(model);
  }

  const auto& b = j.at("boost");
  for (const auto& st : b.at("stumps")) {
    Stump stump;
    stump.feature_index = st.at("feature_index").get<std::size_t>();
    stump.threshold = threshold_from_json(st.at("threshold"));
    stump.polarity = st.at("polarity").get<int>();
    stump.weighted_error = st.at("weighted_error").get<double>();
    m.boost.stumps.push_back(stump);
    m.boost.alphas.push_back(st.at("alpha").get<double>());
  }
  m.boost.rounds_requested = b.at("rounds_requested").get<std::size_t>();
  if (b.at("rounds_used").get<std::size_t>() != m.boost.stumps.size()) {
    throw Error(ErrorCode::corrupt_model, "rounds_used does not match the number of stumps");
  }
  m.boost.stop_reason = stop_reason_from_string(b.at("stop_reason").get<std::string>());
  m.boost.n_features = b.at("n_features").get<std::size_t>();

  const auto& t = j.at("training_meta");
  auto& meta = m.meta;
  meta.seed = t.at("seed").get<std::uint64_t>();
  meta.train_fraction = t.at("train_fraction").get<double>();
  meta.stratified = t.at("stratified").get<bool>();
  meta.rounds = t.at("rounds").get<std::size_t>();
  meta.eps_floor = t.at("eps_floor").get<double>();
  meta.components = t.at("n_components").get<std::size_t>();
  meta.contrast = t.at("contrast").get<std::string>();
  meta.tol = t.at("tol").get<double>();
  meta.max_iter = t.at("max_iter").get<std::size_t>();
  meta.dataset_fingerprint = t.at("dataset_fingerprint").get<std::string>();
  meta.dropped_row_count = t.at("dropped_row_count").get<std::size_t>();
  meta.train_rows = t.at("train_rows").get<std::size_t>();
  meta.scenario_tag = t.at("scenario_tag").get<std::string>();
  meta.timestamp = t.at("timestamp").get<std::string>();
  return m;
}

}  // namespace

std::string serialize_model(const PipelineModel& model) {
  model.validate();
  return to_json(model).dump(2) + "\n";
}

PipelineModel parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::corrupt_model, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != kSchemaVersion) {
    throw Error(ErrorCode::schema_mismatch, "unsupported schema_version (expected " +
                                                std::to_string(kSchemaVersion) + ")");
  }
  PipelineModel model;
  try {
    model = from_json(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::corrupt_model, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::corrupt_model) throw;
    throw Error(ErrorCode::corrupt_model, e.detail());
  }
  model.validate();
  return model;
}

void save_model(const PipelineModel& model, const std::filesystem::path& path, bool force) {
  if (!force && std::filesystem::exists(path)) {
    throw Error(ErrorCode::output_exists, path.string() + " exists; pass --force to overwrite");
  }
  const auto text = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::file_unreadable, "cannot write " + path.string());
  out << text;
}

PipelineModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::file_unreadable, "cannot open " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_model(text);
}

}  // namespace uwbnlos
