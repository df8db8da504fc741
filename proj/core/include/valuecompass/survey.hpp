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

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "valuecompass/catalog.hpp"
#include "valuecompass/contexts.hpp"
#include "valuecompass/metrics.hpp"
#include "valuecompass/scale.hpp"

namespace valuecompass {

struct AttentionAnswer {
  Answer recorded = Answer::missing();
  Answer expected = Answer::missing();
  bool passed() const { return recorded.is_numeric() && recorded == expected; }
};

/// One participant's row of a survey export.
struct SurveyRecord {
  std::string participant_id;
  Country country = Country::united_states;
  Topic topic = Topic::educational_supervision;
  std::vector<std::pair<std::string, std::string>> demographics;  // demo_ columns, prefix stripped
  std::vector<Answer> responses;  // one per catalog value; blank cells are missing
  std::array<AttentionAnswer, 2> attention;
  std::vector<std::string> open_ended;
  std::size_t source_line = 0;

  int context_index() const { return valuecompass::context_index(country, topic); }
};

struct IngestReport {
  std::size_t total_rows = 0;
  std::size_t accepted = 0;
  std::size_t rejected_attention = 0;
  std::size_t rejected_malformed = 0;
  std::map<int, std::size_t> accepted_per_context;  // context index -> count
  std::vector<std::string> diagnostics;
  std::vector<int> empty_contexts;  // contexts left without any accepted participant

  bool reconciles() const {
    return total_rows == accepted + rejected_attention + rejected_malformed;
  }
  std::string to_json() const;
};

struct ParsedSurvey {
  std::vector<SurveyRecord> records;
  IngestReport report;  // accepted = well-formed rows before attention filtering
};

/// Reads a survey export. Header: participant_id, country, topic, optional
/// demo_* columns, v1..vK for the K catalog values, attn1, attn1_expected,
/// attn2, attn2_expected, then any open* columns. Malformed rows are counted
/// and skipped with line-numbered diagnostics; a repeated participant_id
/// keeps the first row. Throws SchemaError when mandatory columns are
/// missing or the value columns do not match the catalog.
ParsedSurvey parse_survey_text(std::string_view csv_text, const Catalog& catalog);
ParsedSurvey parse_survey_csv(const std::filesystem::path& path, const Catalog& catalog);

struct AttentionSplit {
  std::vector<SurveyRecord> kept;
  std::vector<SurveyRecord> dropped;
};

/// Keeps a record iff both attention answers equal their expected answers.
AttentionSplit apply_attention_filter(std::vector<SurveyRecord> records);

struct IngestResult {
  std::vector<SurveyRecord> kept;
  std::vector<SurveyRecord> dropped;
  IngestReport report;
};

/// Parse, filter, and reconcile the report counts.
IngestResult ingest_survey(std::string_view csv_text, const Catalog& catalog);
IngestResult ingest_survey_file(const std::filesystem::path& path, const Catalog& catalog);

/// H[i,k] = mean unit score over the participants of context i with a
/// numeric answer for value k. Irrelevant and blank answers are excluded
/// from the mean; irrelevance rates are kept as metadata.
ResponseMatrix aggregate_human_matrix(std::span<const SurveyRecord> records,
                                      std::size_t value_count);

/// participant_id,country,topic,question,answer; one line per answer.
std::string open_ended_csv(std::span<const SurveyRecord> records);

}  // namespace valuecompass
