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
#include "valuecompass/survey.hpp"

#include <algorithm>
#include <charconv>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>

#include "valuecompass/csv.hpp"
#include "valuecompass/error.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass {

std::string IngestReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["total_rows"] = total_rows;
  doc["accepted"] = accepted;
  doc["rejected_attention"] = rejected_attention;
  doc["rejected_malformed"] = rejected_malformed;
  nlohmann::ordered_json per_context = nlohmann::ordered_json::array();
  for (const auto& context : enumerate_contexts()) {
    auto it = accepted_per_context.find(context.index);
    per_context.push_back({{"context_index", context.index},
                           {"country", country_name(context.country)},
                           {"topic", topic_name(context.topic)},
                           {"accepted", it == accepted_per_context.end() ? 0 : it->second}});
  }
  doc["accepted_per_context"] = std::move(per_context);
  doc["empty_contexts"] = empty_contexts;
  doc["diagnostics"] = diagnostics;
  return doc.dump(2) + "\n";
}

namespace {

struct Columns {
  std::size_t participant = 0;
  std::size_t country = 0;
  std::size_t topic = 0;
  std::vector<std::pair<std::size_t, std::string>> demographics;
  std::vector<std::size_t> values;  // index k -> column of v(k+1)
  std::array<std::size_t, 4> attention{};
  std::vector<std::pair<std::size_t, std::string>> open;
  std::size_t width = 0;
};

std::optional<int> value_column_number(std::string_view name) {
  if (name.size() < 2 || name[0] != 'v') return std::nullopt;
  int n = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
  if (ec != std::errc{} || ptr != name.data() + name.size() || n < 1) return std::nullopt;
  return n;
}

Columns map_columns(const csv::Row& header, std::size_t value_count) {
  Columns cols;
  cols.width = header.size();
  std::map<std::string, std::size_t> named;
  std::map<int, std::size_t> value_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string name = to_lower(trim(header[i]));
    if (!named.emplace(name, i).second) throw SchemaError("duplicate column '" + name + "'");
    if (auto n = value_column_number(name)) {
      value_cols[*n] = i;
    } else if (name.starts_with("demo_")) {
      cols.demographics.emplace_back(i, std::string(trim(header[i])).substr(5));
    } else if (name.starts_with("open")) {
      cols.open.emplace_back(i, std::string(trim(header[i])));
    }
  }

  std::vector<std::string> missing;
  auto require = [&](const std::string& name) -> std::size_t {
    auto it = named.find(name);
    if (it == named.end()) {
      missing.push_back(name);
      return 0;
    }
    return it->second;
  };
  cols.participant = require("participant_id");
  cols.country = require("country");
  cols.topic = require("topic");
  const char* attention_names[] = {"attn1", "attn1_expected", "attn2", "attn2_expected"};
  for (std::size_t i = 0; i < 4; ++i) cols.attention[i] = require(attention_names[i]);
  for (std::size_t k = 1; k <= value_count; ++k) {
    auto it = value_cols.find(static_cast<int>(k));
    if (it == value_cols.end()) {
      missing.push_back("v" + std::to_string(k));
    } else {
      cols.values.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw SchemaError("survey export is missing mandatory columns: " + list);
  }
  if (value_cols.size() != value_count) {
    throw SchemaError("survey export has " + std::to_string(value_cols.size()) +
                      " value columns but the catalog has " + std::to_string(value_count));
  }
  return cols;
}

}  // namespace

ParsedSurvey parse_survey_text(std::string_view csv_text, const Catalog& catalog) {
  auto rows = csv::parse(csv_text);
  if (rows.empty()) throw SchemaError("survey export is empty");
  Columns cols = map_columns(rows.front().fields, catalog.size());

  ParsedSurvey out;
  std::set<std::string> seen;
  auto reject = [&](std::size_t line, const std::string& why) {
    ++out.report.rejected_malformed;
    out.report.diagnostics.push_back("line " + std::to_string(line) + ": " + why);
  };

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ++out.report.total_rows;
    if (row.fields.size() != cols.width) {
      reject(row.line, "expected " + std::to_string(cols.width) + " fields, found " +
                           std::to_string(row.fields.size()));
      continue;
    }
    SurveyRecord record;
    record.source_line = row.line;
    record.participant_id = std::string(trim(row.fields[cols.participant]));
    if (record.participant_id.empty()) {
      reject(row.line, "empty participant_id");
      continue;
    }
    auto country = country_from_name(row.fields[cols.country]);
    if (!country) {
      reject(row.line, "unknown country '" + row.fields[cols.country] + "'");
      continue;
    }
    auto topic = topic_from_name(row.fields[cols.topic]);
    if (!topic) {
      reject(row.line, "unknown topic '" + row.fields[cols.topic] + "'");
      continue;
    }
    record.country = *country;
    record.topic = *topic;

    bool ok = true;
    for (std::size_t k = 0; k < cols.values.size() && ok; ++k) {
      auto answer = parse_answer_token(row.fields[cols.values[k]]);
      if (!answer) {
        reject(row.line, "v" + std::to_string(k + 1) + ": invalid response '" +
                             row.fields[cols.values[k]] + "'");
        ok = false;
      } else {
        record.responses.push_back(*answer);
      }
    }
    for (std::size_t a = 0; a < 2 && ok; ++a) {
      auto recorded = parse_answer_token(row.fields[cols.attention[2 * a]]);
      auto expected = parse_answer_token(row.fields[cols.attention[2 * a + 1]]);
      if (!recorded) {
        reject(row.line, "attn" + std::to_string(a + 1) + ": invalid answer");
        ok = false;
      } else if (!expected || !expected->is_numeric()) {
        reject(row.line, "attn" + std::to_string(a + 1) + "_expected must be a scale level");
        ok = false;
      } else {
        record.attention[a] = {*recorded, *expected};
      }
    }
    if (!ok) continue;

    if (!seen.insert(record.participant_id).second) {
      reject(row.line, "duplicate participant_id '" + record.participant_id + "'");
      continue;
    }
    for (const auto& [col, name] : cols.demographics) {
      record.demographics.emplace_back(name, row.fields[col]);
    }
    for (const auto& [col, name] : cols.open) record.open_ended.push_back(row.fields[col]);

    ++out.report.accepted;
    ++out.report.accepted_per_context[record.context_index()];
    out.records.push_back(std::move(record));
  }
  return out;
}

ParsedSurvey parse_survey_csv(const std::filesystem::path& path, const Catalog& catalog) {
  return parse_survey_text(read_file(path), catalog);
}

AttentionSplit apply_attention_filter(std::vector<SurveyRecord> records) {
  AttentionSplit split;
  for (auto& record : records) {
    bool passed = record.attention[0].passed() && record.attention[1].passed();
    (passed ? split.kept : split.dropped).push_back(std::move(record));
  }
  return split;
}

namespace {

IngestResult finish_ingest(ParsedSurvey parsed) {
  IngestResult result;
  result.report = std::move(parsed.report);
  auto split = apply_attention_filter(std::move(parsed.records));
  result.kept = std::move(split.kept);
  result.dropped = std::move(split.dropped);

  result.report.accepted = result.kept.size();
  result.report.rejected_attention = result.dropped.size();
  result.report.accepted_per_context.clear();
  for (const auto& record : result.kept) ++result.report.accepted_per_context[record.context_index()];
  for (const auto& record : result.dropped) {
    result.report.diagnostics.push_back("line " + std::to_string(record.source_line) +
                                        ": participant '" + record.participant_id +
                                        "' failed an attention check");
  }
  for (const auto& context : enumerate_contexts()) {
    if (!result.report.accepted_per_context.contains(context.index)) {
      result.report.empty_contexts.push_back(context.index);
    }
  }
  return result;
}

}  // namespace

IngestResult ingest_survey(std::string_view csv_text, const Catalog& catalog) {
  return finish_ingest(parse_survey_text(csv_text, catalog));
}

IngestResult ingest_survey_file(const std::filesystem::path& path, const Catalog& catalog) {
  return finish_ingest(parse_survey_csv(path, catalog));
}

ResponseMatrix aggregate_human_matrix(std::span<const SurveyRecord> records,
                                      std::size_t value_count) {
  ResponseMatrix m(MatrixSource::human, kContextCount, value_count);
  Grid<double> sums(kContextCount, value_count, 0.0);
  Grid<int> irrelevant(kContextCount, value_count, 0);

  // Sum in participant-id order so the mean is independent of row order.
  std::vector<const SurveyRecord*> ordered;
  for (const auto& record : records) ordered.push_back(&record);
  std::ranges::sort(ordered, {}, [](const SurveyRecord* r) { return r->participant_id; });

  for (const SurveyRecord* record : ordered) {
    if (record->responses.size() != value_count) {
      throw IntegrityError("participant '" + record->participant_id + "' has " +
                           std::to_string(record->responses.size()) + " responses, expected " +
                           std::to_string(value_count));
    }
    auto row = static_cast<std::size_t>(record->context_index() - 1);
    for (std::size_t k = 0; k < value_count; ++k) {
      const auto& answer = record->responses[k];
      if (answer.is_numeric()) {
        sums(row, k) += scale_to_unit(answer);
        ++m.contributors(row, k);
      } else if (answer.is_irrelevant()) {
        ++irrelevant(row, k);
      }
    }
  }
  for (std::size_t r = 0; r < kContextCount; ++r) {
    for (std::size_t k = 0; k < value_count; ++k) {
      int n = m.contributors(r, k);
      if (n > 0) m.values(r, k) = sums(r, k) / n;
      int answered = n + irrelevant(r, k);
      if (answered > 0) m.irrelevance_rate(r, k) = static_cast<double>(irrelevant(r, k)) / answered;
    }
  }
  return m;
}

std::string open_ended_csv(std::span<const SurveyRecord> records) {
  std::string out = csv::format_row({"participant_id", "country", "topic", "question", "answer"});
  for (const auto& record : records) {
    for (std::size_t q = 0; q < record.open_ended.size(); ++q) {
      if (trim(record.open_ended[q]).empty()) continue;
      out += csv::format_row({record.participant_id, std::string(country_name(record.country)),
                              std::string(topic_name(record.topic)), "open" + std::to_string(q + 1),
                              record.open_ended[q]});
    }
  }
  return out;
}

}  // namespace valuecompass
