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

#include "uwbnlos/dataset.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <string_view>

#include "uwbnlos/error.hpp"
#include "uwbnlos/rng.hpp"

namespace uwbnlos {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<int> parse_label(std::string_view cell, LabelEncoding encoding) {
  if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
  switch (encoding) {
    case LabelEncoding::zero_one:
      if (cell == "1") return kPresent;
      if (cell == "0") return kAbsent;
      return std::nullopt;
    case LabelEncoding::yes_no: {
      const auto v = lower(cell);
      if (v == "yes" || v == "person yes") return kPresent;
      if (v == "no" || v == "person no") return kAbsent;
      return std::nullopt;
    }
    case LabelEncoding::plus_minus_one:
      if (cell == "1" || cell == "+1") return kPresent;
      if (cell == "-1") return kAbsent;
      return std::nullopt;
  }
  return std::nullopt;
}

std::string_view label_text(int label, LabelEncoding encoding) {
  const bool present = label == kPresent;
  switch (encoding) {
    case LabelEncoding::zero_one: return present ? "1" : "0";
    case LabelEncoding::yes_no: return present ? "yes" : "no";
    case LabelEncoding::plus_minus_one: return present ? "1" : "-1";
  }
  return "";
}

bool is_skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

void append_double(std::string& out, double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(n));
}

}  // namespace

LabeledDataset::LabeledDataset(Matrix windows, std::vector<int> labels, std::string scenario_tag,
                               std::size_t dropped_row_count)
    : windows_(std::move(windows)),
      labels_(std::move(labels)),
      scenario_tag_(std::move(scenario_tag)),
      dropped_row_count_(dropped_row_count) {
  if (static_cast<std::size_t>(windows_.rows()) != labels_.size()) {
    throw Error(ErrorCode::length_mismatch, "windows and labels differ in length");
  }
  if (!labels_.empty() && windows_.cols() < 2) {
    throw Error(ErrorCode::invalid_argument, "windows need at least 2 samples");
  }
  for (int label : labels_) {
    if (label != kPresent && label != kAbsent) {
      throw Error(ErrorCode::invalid_argument, "labels must be +1 or -1");
    }
  }
  if (!windows_.allFinite()) throw Error(ErrorCode::invalid_argument, "window samples must be finite");
}

std::size_t LabeledDataset::count(int label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  Matrix rows(static_cast<Eigen::Index>(indices.size()), windows_.cols());
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const auto i = indices[k];
    if (i >= labels_.size()) throw Error(ErrorCode::invalid_argument, "subset index out of range");
    rows.row(static_cast<Eigen::Index>(k)) = windows_.row(static_cast<Eigen::Index>(i));
    labels.push_back(labels_[i]);
  }
  return LabeledDataset(std::move(rows), std::move(labels), scenario_tag_, dropped_row_count_);
}

std::string LabeledDataset::fingerprint() const {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  auto feed_u64 = [&](std::uint64_t v) {
    unsigned char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(v >> (8 * b));
    EVP_DigestUpdate(ctx.get(), bytes, sizeof bytes);
  };
  feed_u64(static_cast<std::uint64_t>(windows_.rows()));
  feed_u64(static_cast<std::uint64_t>(windows_.cols()));
  for (Eigen::Index i = 0; i < windows_.rows(); ++i) {
    feed_u64(labels_[static_cast<std::size_t>(i)] == kPresent ? 1 : 0);
    for (Eigen::Index j = 0; j < windows_.cols(); ++j) feed_u64(std::bit_cast<std::uint64_t>(windows_(i, j)));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

LabeledDataset parse_csv(std::istream& in, const CsvLayout& layout, std::string scenario_tag) {
  struct Row {
    std::vector<double> samples;
    int label;
  };
  std::vector<Row> candidates;
  std::size_t data_rows = 0;
  std::size_t unparseable = 0;
  std::optional<std::size_t> width;
  std::size_t width_mismatches = 0;
  bool header_pending = layout.has_header;

  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    ++data_rows;
    const auto cells = split_cells(line);
    if (width && cells.size() != *width) {
      ++width_mismatches;
      continue;
    }
    if (cells.size() < 3) {
      ++unparseable;
      continue;
    }
    const std::size_t label_at = layout.label_column == LabelColumn::first ? 0 : cells.size() - 1;
    const auto label = parse_label(cells[label_at], layout.label_encoding);
    if (!label) {
      ++unparseable;
      continue;
    }
    Row row{{}, *label};
    row.samples.reserve(cells.size() - 1);
    bool ok = true;
    for (std::size_t c = 0; c < cells.size() && ok; ++c) {
      if (c == label_at) continue;
      const auto v = parse_number(cells[c]);
      ok = v && std::isfinite(*v);
      if (ok) row.samples.push_back(*v);
    }
    if (!ok) {
      ++unparseable;
      continue;
    }
    if (!width) width = cells.size();
    candidates.push_back(std::move(row));
  }

  if (width_mismatches * 2 > data_rows) {
    throw Error(ErrorCode::inconsistent_width,
                std::to_string(width_mismatches) + " of " + std::to_string(data_rows) +
                    " rows disagree with the inferred width " + std::to_string(width.value_or(0)) +
                    "; check the layout flags");
  }
  if (candidates.empty()) throw Error(ErrorCode::empty_dataset, "no valid rows");

  const auto J = static_cast<Eigen::Index>(*width - 1);
  Matrix windows(static_cast<Eigen::Index>(candidates.size()), J);
  std::vector<int> labels;
  labels.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    windows.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(candidates[i].samples.data(), J);
    labels.push_back(candidates[i].label);
  }
  return LabeledDataset(std::move(windows), std::move(labels), std::move(scenario_tag),
                        width_mismatches + unparseable);
}

LabeledDataset load_csv(const std::filesystem::path& path, const CsvLayout& layout, std::string scenario_tag) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::file_unreadable, "cannot open " + path.string());
  return parse_csv(in, layout, std::move(scenario_tag));
}

void write_csv(std::ostream& out, const LabeledDataset& ds, const CsvLayout& layout) {
  const auto& w = ds.windows();
  if (layout.has_header) {
    std::string header;
    if (layout.label_column == LabelColumn::first) header += "label,";
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (j) header += ',';
      header += "s" + std::to_string(j);
    }
    if (layout.label_column == LabelColumn::last) header += ",label";
    out << header << '\n';
  }
  std::string line;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    line.clear();
    const auto label = label_text(ds.labels()[i], layout.label_encoding);
    if (layout.label_column == LabelColumn::first) {
      line.append(label);
      line += ',';
    }
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (j) line += ',';
      append_double(line, w(static_cast<Eigen::Index>(i), j));
    }
    if (layout.label_column == LabelColumn::last) {
      line += ',';
      line.append(label);
    }
    out << line << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const LabeledDataset& ds, const CsvLayout& layout) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::file_unreadable, "cannot write " + path.string());
  write_csv(out, ds, layout);
}

UnlabeledWindows parse_unlabeled_csv(std::istream& in, bool has_header) {
  std::vector<std::vector<double>> rows;
  UnlabeledWindows result;
  std::optional<std::size_t> width;
  bool header_pending = has_header;
  std::size_t row_index = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cells = split_cells(line);
    const auto this_row = row_index++;
    if ((width && cells.size() != *width) || cells.size() < 2) {
      ++result.dropped_row_count;
      continue;
    }
    std::vector<double> samples;
    samples.reserve(cells.size());
    bool ok = true;
    for (const auto cell : cells) {
      const auto v = parse_number(cell);
      ok = v && std::isfinite(*v);
      if (!ok) break;
      samples.push_back(*v);
    }
    if (!ok) {
      ++result.dropped_row_count;
      continue;
    }
    if (!width) width = cells.size();
    rows.push_back(std::move(samples));
    result.source_rows.push_back(this_row);
  }
  if (rows.empty()) throw Error(ErrorCode::empty_dataset, "no valid rows");
  result.windows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(*width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    result.windows.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(rows[i].data(), static_cast<Eigen::Index>(*width));
  }
  return result;
}

UnlabeledWindows load_unlabeled_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::file_unreadable, "cannot open " + path.string());
  return parse_unlabeled_csv(in, has_header);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  std::string line;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) line += ',';
      append_double(line, m(i, j));
    }
    out << line << '\n';
  }
}

SplitIndices split_indices(const LabeledDataset& ds, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "train_fraction must lie strictly between 0 and 1");
  }
  if (ds.empty()) throw Error(ErrorCode::empty_dataset, "cannot split an empty dataset");

  const std::size_t n = ds.size();
  const auto train_total = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));
  Rng rng(spec.seed, Stream::split);
  SplitIndices out;

  if (!spec.stratified) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order.begin(), order.end());
    out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_total));
    out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(train_total), order.end());
  } else {
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < n; ++i) (ds.labels()[i] == kPresent ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty()) {
      throw Error(ErrorCode::single_class_stratify, "stratified split needs both classes");
    }
    // Floor each class's exact share, then hand the remaining rows to the
    // classes with the largest fractional parts (positive class on ties).
    struct Share {
      std::vector<std::size_t>* rows;
      std::size_t take;
      double remainder;
    };
    std::array<Share, 2> shares{};
    std::size_t floored = 0;
    std::size_t k = 0;
    for (auto* rows : {&pos, &neg}) {
      const double exact = spec.train_fraction * static_cast<double>(rows->size());
      const auto base = static_cast<std::size_t>(std::floor(exact));
      shares[k++] = {rows, base, exact - static_cast<double>(base)};
      floored += base;
    }
    std::size_t extra = train_total > floored ? train_total - floored : 0;
    std::array<std::size_t, 2> order{0, 1};
    if (shares[1].remainder > shares[0].remainder) std::swap(order[0], order[1]);
    for (auto idx : order) {
      if (extra > 0 && shares[idx].take < shares[idx].rows->size()) {
        ++shares[idx].take;
        --extra;
      }
    }
    for (auto& share : shares) {
      rng.shuffle(share.rows->begin(), share.rows->end());
      const auto cut = share.rows->begin() + static_cast<std::ptrdiff_t>(share.take);
      out.train.insert(out.train.end(), share.rows->begin(), cut);
      out.test.insert(out.test.end(), cut, share.rows->end());
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& ds, const SplitSpec& spec) {
  const auto idx = split_indices(ds, spec);
  return {ds.subset(idx.train), ds.subset(idx.test)};
}

}  // namespace uwbnlos
