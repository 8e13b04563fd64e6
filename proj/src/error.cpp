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

#include "uwbnlos/error.hpp"

#include <utility>

namespace uwbnlos {

namespace {

std::string compose(ErrorCode code, const std::string& stage, const std::string& message) {
  std::string out;
  if (!stage.empty()) out += "[" + stage + "] ";
  out += std::string(to_string(code));
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::file_unreadable: return "FileUnreadable";
    case ErrorCode::empty_dataset: return "EmptyDataset";
    case ErrorCode::inconsistent_width: return "InconsistentWidth";
    case ErrorCode::single_class_stratify: return "SingleClassStratify";
    case ErrorCode::single_class: return "SingleClass";
    case ErrorCode::empty_data: return "EmptyData";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::empty_matrix: return "EmptyMatrix";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::rank_deficient: return "RankDeficient";
    case ErrorCode::not_whitened: return "NotWhitened";
    case ErrorCode::ill_conditioned_mixing: return "IllConditionedMixing";
    case ErrorCode::degenerate_data: return "DegenerateData";
    case ErrorCode::schema_mismatch: return "SchemaMismatch";
    case ErrorCode::corrupt_model: return "CorruptModel";
    case ErrorCode::output_exists: return "OutputExists";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
      return 2;
    case ErrorCode::file_unreadable:
    case ErrorCode::empty_dataset:
    case ErrorCode::inconsistent_width:
    case ErrorCode::single_class_stratify:
    case ErrorCode::single_class:
    case ErrorCode::empty_data:
    case ErrorCode::length_mismatch:
      return 3;
    case ErrorCode::dimension_mismatch:
      return 4;
    case ErrorCode::empty_matrix:
    case ErrorCode::rank_deficient:
    case ErrorCode::not_whitened:
    case ErrorCode::ill_conditioned_mixing:
    case ErrorCode::degenerate_data:
      return 5;
    case ErrorCode::schema_mismatch:
    case ErrorCode::corrupt_model:
      return 6;
    case ErrorCode::output_exists:
      return 7;
  }
  return 1;
}

Error::Error(ErrorCode code, const std::string& message, std::string stage)
    : std::runtime_error(compose(code, stage, message)),
      code_(code),
      stage_(std::move(stage)),
      detail_(message) {}

Error Error::at_stage(std::string stage) const { return Error(code_, detail_, std::move(stage)); }

}  // namespace uwbnlos
