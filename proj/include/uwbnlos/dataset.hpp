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
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uwbnlos/matrix.hpp"

namespace uwbnlos {

/// Person present / absent. The numeric values are the ones the boosting
/// exponent multiplies, so they are part of the contract.
inline constexpr int kPresent = +1;
inline constexpr int kAbsent = -1;

enum class LabelColumn { first, last };

/// How a label cell is spelled in the file.
///   zero_one        1 -> present, 0 -> absent
///   yes_no          "yes"/"person yes" -> present, "no"/"person no" -> absent
///   plus_minus_one  +1 / 1 -> present, -1 -> absent
enum class LabelEncoding { zero_one, yes_no, plus_minus_one };

struct CsvLayout {
  LabelColumn label_column = LabelColumn::first;
  LabelEncoding label_encoding = LabelEncoding::zero_one;
  bool has_header = false;
};

/// I windows of J samples each, with one +1/-1 label per window. Immutable
/// once constructed; the constructor enforces every invariant.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(Matrix windows, std::vector<int> labels, std::string scenario_tag = {},
                 std::size_t dropped_row_count = 0);

  const Matrix& windows() const { return windows_; }
  std::span<const int> labels() const { return labels_; }
  std::span<const double> window(std::size_t i) const {
    return row_span(windows_, static_cast<Eigen::Index>(i));
  }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t window_length() const { return static_cast<std::size_t>(windows_.cols()); }
  const std::string& scenario_tag() const { return scenario_tag_; }
  std::size_t dropped_row_count() const { return dropped_row_count_; }
  std::size_t count(int label) const;

  /// Rows at `indices`, in the given order. Tag and dropped count carry over.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

  /// SHA-256 over shape, sample bits and labels, as lowercase hex.
  std::string fingerprint() const;

 private:
  Matrix windows_;
  std::vector<int> labels_;
  std::string scenario_tag_;
  std::size_t dropped_row_count_ = 0;
};

LabeledDataset load_csv(const std::filesystem::path& path, const CsvLayout& layout,
                        std::string scenario_tag = {});
LabeledDataset parse_csv(std::istream& in, const CsvLayout& layout, std::string scenario_tag = {});

/// Samples are written with 17 significant digits so a reload is bit-exact.
void write_csv(std::ostream& out, const LabeledDataset& ds, const CsvLayout& layout);
void write_csv(const std::filesystem::path& path, const LabeledDataset& ds, const CsvLayout& layout);

/// Unlabeled windows, one per row (used by `predict`). Rows that fail to
/// parse or have the wrong width are skipped and counted.
struct UnlabeledWindows {
  Matrix windows;
  std::vector<std::size_t> source_rows;
  std::size_t dropped_row_count = 0;
};
UnlabeledWindows load_unlabeled_csv(const std::filesystem::path& path, bool has_header);
UnlabeledWindows parse_unlabeled_csv(std::istream& in, bool has_header);
void write_matrix_csv(std::ostream& out, const Matrix& m);

struct SplitSpec {
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  bool stratified = true;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Train gets round(train_fraction * I) rows. Indices in each half are
/// returned in ascending order.
SplitIndices split_indices(const LabeledDataset& ds, const SplitSpec& spec);
std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& ds, const SplitSpec& spec);

}  // namespace uwbnlos
