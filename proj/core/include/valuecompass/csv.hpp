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
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC 4180 reader/writer. Quoted fields may contain separators,
// doubled quotes and line breaks.
namespace valuecompass::csv {

using Row = std::vector<std::string>;

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  Row fields;
};

/// Splits `text` into records. Blank lines are skipped and a leading UTF-8
/// BOM is ignored. Throws ParseError on an unterminated quoted field.
std::vector<Record> parse(std::string_view text);

std::string escape(std::string_view field);

/// Joins fields into one line, terminated by '\n'.
std::string format_row(const Row& fields);

}  // namespace valuecompass::csv
