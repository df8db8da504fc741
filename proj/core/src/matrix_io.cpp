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
#include "valuecompass/matrix_io.hpp"

#include <charconv>

#include "valuecompass/csv.hpp"
#include "valuecompass/error.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass {

std::string write_matrix_csv(const MatrixTable& table, int precision) {
  std::string out;
  csv::Row ids = table.leading_headers;
  csv::Row names(table.leading_headers.size());
  for (std::size_t k = 0; k < table.value_ids.size(); ++k) {
    ids.push_back(std::to_string(table.value_ids[k]));
    names.push_back(table.value_names[k]);
  }
  out += csv::format_row(ids);
  out += csv::format_row(names);
  for (std::size_t r = 0; r < table.values.rows(); ++r) {
    csv::Row row = table.row_labels[r];
    for (std::size_t c = 0; c < table.values.cols(); ++c) {
      row.push_back(format_cell(table.values(r, c), precision));
    }
    out += csv::format_row(row);
  }
  return out;
}

MatrixTable read_matrix_csv(std::string_view text) {
  auto records = csv::parse(text);
  if (records.size() < 2) throw ParseError("matrix file needs two header lines");

  MatrixTable table;
  const auto& ids = records[0].fields;
  std::size_t lead = 0;
  for (; lead < ids.size(); ++lead) {
    int id = 0;
    auto field = trim(ids[lead]);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
    if (ec == std::errc{} && ptr == field.data() + field.size()) break;
    table.leading_headers.push_back(ids[lead]);
  }
  for (std::size_t c = lead; c < ids.size(); ++c) {
    int id = 0;
    auto field = trim(ids[c]);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      throw ParseError("value id header '" + ids[c] + "' is not an integer", records[0].line);
    }
    table.value_ids.push_back(id);
  }
  const auto& names = records[1].fields;
  if (names.size() != ids.size()) {
    throw ParseError("value-name header has " + std::to_string(names.size()) + " fields, expected " +
                         std::to_string(ids.size()),
                     records[1].line);
  }
  table.value_names.assign(names.begin() + static_cast<std::ptrdiff_t>(lead), names.end());

  table.values = Grid<Cell>(records.size() - 2, table.value_ids.size());
  for (std::size_t r = 2; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != ids.size()) {
      throw ParseError("expected " + std::to_string(ids.size()) + " fields, found " +
                           std::to_string(rec.fields.size()),
                       rec.line);
    }
    table.row_labels.emplace_back(rec.fields.begin(),
                                  rec.fields.begin() + static_cast<std::ptrdiff_t>(lead));
    for (std::size_t c = lead; c < rec.fields.size(); ++c) {
      try {
        table.values(r - 2, c - lead) = parse_cell(rec.fields[c]);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), rec.line);
      }
    }
  }
  return table;
}

namespace {

void fill_value_headers(MatrixTable& table, const Catalog& catalog) {
  for (const auto& item : catalog) {
    table.value_ids.push_back(item.id);
    table.value_names.push_back(item.name);
  }
}

}  // namespace

MatrixTable context_matrix_table(const Grid<Cell>& values, const Catalog& catalog) {
  MatrixTable table;
  table.leading_headers = {"context_index", "country", "topic"};
  fill_value_headers(table, catalog);
  for (std::size_t r = 0; r < values.rows(); ++r) {
    auto context = context_at(static_cast<int>(r + 1));
    table.row_labels.push_back({std::to_string(context.index),
                                std::string(country_name(context.country)),
                                std::string(topic_name(context.topic))});
  }
  table.values = values;
  return table;
}

MatrixTable scope_matrix_table(std::span<const std::vector<Cell>> rows,
                               std::span<const Scope> scopes, const Catalog& catalog) {
  MatrixTable table;
  table.leading_headers = {"scope"};
  fill_value_headers(table, catalog);
  table.values = Grid<Cell>(rows.size(), catalog.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    table.row_labels.push_back({scopes[r].label()});
    for (std::size_t c = 0; c < catalog.size(); ++c) table.values(r, c) = rows[r][c];
  }
  return table;
}

Grid<Cell> to_cells(const Grid<int>& counts) {
  Grid<Cell> out(counts.rows(), counts.cols());
  for (std::size_t r = 0; r < counts.rows(); ++r) {
    for (std::size_t c = 0; c < counts.cols(); ++c) out(r, c) = counts(r, c);
  }
  return out;
}

}  // namespace valuecompass
