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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "valuecompass/catalog.hpp"
#include "valuecompass/contexts.hpp"
#include "valuecompass/metrics.hpp"

namespace valuecompass {

/// Matrix file with a two-line header:
///
///   context_index,country,topic,1,2,...,56
///   ,,,Equality,Inner Harmony,...
///   1,United States,Educational Supervision,0.750000,NA,...
///
/// Leading label columns vary by file (one `scope` column for grouped
/// matrices). Cells are fixed-point decimals or `NA`.
struct MatrixTable {
  std::vector<std::string> leading_headers;
  std::vector<std::vector<std::string>> row_labels;
  std::vector<int> value_ids;
  std::vector<std::string> value_names;
  Grid<Cell> values;

  friend bool operator==(const MatrixTable&, const MatrixTable&) = default;
};

std::string write_matrix_csv(const MatrixTable& table, int precision = 6);

/// Throws ParseError for ragged rows, a missing second header line, or
/// non-numeric cells.
MatrixTable read_matrix_csv(std::string_view text);

/// One row per context, in index order.
MatrixTable context_matrix_table(const Grid<Cell>& values, const Catalog& catalog);

/// One row per scope, labelled by scope name.
MatrixTable scope_matrix_table(std::span<const std::vector<Cell>> rows,
                               std::span<const Scope> scopes, const Catalog& catalog);

Grid<Cell> to_cells(const Grid<int>& counts);

}  // namespace valuecompass
