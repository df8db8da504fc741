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
#include "valuecompass/score_record.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "valuecompass/error.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass {

std::string record_to_jsonl(const ScoreRecord& record) {
  nlohmann::ordered_json line;
  line["context_index"] = record.context_index;
  line["value_id"] = record.value_id;
  line["variant_id"] = record.variant_id;
  if (record.raw_score.is_numeric()) {
    line["raw_score"] = record.raw_score.raw();
  } else {
    line["raw_score"] = record.raw_score.to_string();
  }
  line["raw_completion"] = record.raw_completion;
  line["latency_ms"] = record.latency_ms;
  if (!record.failure_reason.empty()) line["failure_reason"] = record.failure_reason;
  return line.dump();
}

ScoreRecord record_from_jsonl(std::string_view text) {
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ParseError("record is not a JSON object");
  try {
    ScoreRecord record;
    record.context_index = doc.at("context_index").get<int>();
    record.value_id = doc.at("value_id").get<int>();
    record.variant_id = doc.at("variant_id").get<int>();
    const auto& score = doc.at("raw_score");
    if (score.is_number_integer()) {
      record.raw_score = Answer::numeric(score.get<int>());
    } else if (score.is_string() && score.get<std::string>() == "irrelevant") {
      record.raw_score = Answer::irrelevant();
    } else if (score.is_string() && score.get<std::string>() == "missing") {
      record.raw_score = Answer::missing();
    } else {
      throw ParseError("raw_score must be an integer, \"irrelevant\" or \"missing\"");
    }
    record.raw_completion = doc.value("raw_completion", std::string{});
    record.latency_ms = doc.value("latency_ms", 0.0);
    record.failure_reason = doc.value("failure_reason", std::string{});
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad record: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(std::string("bad record: ") + e.what());
  }
}

std::vector<ScoreRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open records file " + path.string());
  std::vector<ScoreRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    try {
      records.push_back(record_from_jsonl(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
  }
  return records;
}

std::vector<ScoreRecord> read_checkpoint(const std::filesystem::path& path) {
  std::vector<ScoreRecord> records;
  std::ifstream in(path);
  if (!in) return records;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    try {
      records.push_back(record_from_jsonl(line));
    } catch (const ParseError&) {
      // torn write from an interrupted run
    }
  }
  return records;
}

}  // namespace valuecompass
