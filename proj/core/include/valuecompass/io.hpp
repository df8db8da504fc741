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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace valuecompass {

std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temp file and renames it into place. Parent
/// directories are created as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view bytes);

/// Fixed-point decimal with correct rounding (ties to even on exact binary
/// ties). Negative zero prints as zero.
std::string format_fixed(double value, int precision = 6);

/// Cell writer/reader shared by every matrix-shaped CSV: `NA` marks a
/// missing cell.
std::string format_cell(const std::optional<double>& value, int precision = 6);
std::optional<double> parse_cell(std::string_view text);

/// Rounds through the 6-decimal text form so rendered artifacts match their
/// CSV companions exactly.
double quantize6(double value);

std::string to_lower(std::string_view text);
std::string_view trim(std::string_view text);

}  // namespace valuecompass
