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
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "valuecompass/scale.hpp"

namespace valuecompass {

/// Outcome of one prompt. `raw_score` is missing iff parsing or transport
/// failed; the completion text is kept verbatim either way.
struct ScoreRecord {
  int context_index = 0;
  int value_id = 0;
  int variant_id = 0;
  Answer raw_score = Answer::missing();
  std::string raw_completion;
  double latency_ms = 0.0;
  std::string failure_reason;  // empty on success

  std::tuple<int, int, int> key() const { return {context_index, value_id, variant_id}; }
};

std::string record_to_jsonl(const ScoreRecord& record);
ScoreRecord record_from_jsonl(std::string_view line);  // throws ParseError

/// Strict reader: any malformed line is a ParseError naming the line.
std::vector<ScoreRecord> read_records(const std::filesystem::path& path);

/// Tolerant reader for checkpoints: unparsable lines (a torn final write)
/// are skipped. A missing file yields an empty list.
std::vector<ScoreRecord> read_checkpoint(const std::filesystem::path& path);

}  // namespace valuecompass
