// Copyright 2026 The ValueCompass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valuecompass {

inline constexpr std::size_t kValueCount = 56;

struct ValueItem {
  int id = 0;  // 1-based, contiguous
  std::string name;
  std::string definition;
  std::optional<std::string> motivational_type;

  friend bool operator==(const ValueItem&, const ValueItem&) = default;
};

using Catalog = std::vector<ValueItem>;

/// Parses a catalog CSV with header `id,name,definition` and an optional
/// fourth `motivational_type` column. The result is sorted by id.
///
/// Throws ParseError (with the offending line) for malformed rows,
/// CardinalityError when the row count differs from `expected_count`,
/// UniquenessError for repeated ids or names.
Catalog parse_catalog(std::string_view csv_text, std::size_t expected_count = kValueCount);

Catalog load_catalog(const std::filesystem::path& path,
                     std::size_t expected_count = kValueCount);

/// The 56 Schwartz values bundled with the library.
const Catalog& default_catalog();
std::string_view default_catalog_csv();

std::string catalog_to_csv(const Catalog& catalog);

}  // namespace valuecompass

namespace valuecompass {

/// Fills \`motivational_type\` from a \`name,motivational_type\` CSV. Values
/// absent from the mapping keep an empty type; unknown names are a ParseError.
void apply_motivational_types(Catalog& catalog, std::string_view mapping_csv);

}  // namespace valuecompass
