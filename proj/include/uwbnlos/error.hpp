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

#include <stdexcept>
#include <string>
#include <string_view>

namespace uwbnlos {

enum class ErrorCode {
  invalid_argument,
  file_unreadable,
  empty_dataset,
  inconsistent_width,
  single_class_stratify,
  single_class,
  empty_data,
  length_mismatch,
  empty_matrix,
  dimension_mismatch,
  rank_deficient,
  not_whitened,
  ill_conditioned_mixing,
  degenerate_data,
  schema_mismatch,
  corrupt_model,
  output_exists,
};

std::string_view to_string(ErrorCode code);

/// Process exit status for an error family. 0 is reserved for success.
///
///   2  invalid configuration or arguments
///   3  input data problems (unreadable, empty, single class, widths)
///   4  dimension mismatch between a model and its input
///   5  numerical preconditions (rank, whitening, conditioning, no signal)
///   6  model file problems (schema, corruption)
///   7  refusing to overwrite an existing output
int exit_code(ErrorCode code);

/// The single exception type thrown by the library. `stage()` names the
/// pipeline stage ("load", "features/scaler", ...) once a caller has
/// attached one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string stage = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  Error at_stage(std::string stage) const;

 private:
  ErrorCode code_;
  std::string stage_;
  std::string detail_;
};

}  // namespace uwbnlos
