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

#include <filesystem>
#include <string>
#include <string_view>

#include "uwbnlos/pipeline.hpp"

namespace uwbnlos {

/// Canonical JSON: sorted keys, round-trip decimal floats, row-major
/// matrices stored as {"rows", "cols", "data"}. Infinite stump thresholds
/// are written as the strings "inf" / "-inf". Identical models produce
/// identical bytes.
std::string serialize_model(const PipelineModel& model);

/// Throws SchemaMismatch for an unknown schema_version and CorruptModel for
/// malformed documents or violated invariants.
PipelineModel parse_model(std::string_view text);

/// Refuses to replace an existing file unless `force` is set.
void save_model(const PipelineModel& model, const std::filesystem::path& path, bool force);
PipelineModel load_model(const std::filesystem::path& path);

}  // namespace uwbnlos
