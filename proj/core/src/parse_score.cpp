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
#include <cctype>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "valuecompass/gateway.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass {
namespace {

using json = nlohmann::json;

constexpr std::string_view kScoreKeys[] = {"score", "rating", "answer", "response", "choice"};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

/// End offset (exclusive) of the balanced JSON object starting at `open`,
/// or npos if it never closes.
std::size_t object_end(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

bool is_irrelevant_text(std::string_view text, const OptionMap& options) {
  std::string lower = to_lower(trim(text));
  if (lower == "irrelevant" || lower == "irr") return true;
  return options.irrelevant_label && lower == to_lower(*options.irrelevant_label);
}

Answer answer_from_json_value(const json& value, const OptionMap& options) {
  if (value.is_number_integer()) {
    const auto* option = options.find_code(std::to_string(value.get<long long>()));
    return option ? Answer::numeric(option->raw_score) : Answer::missing();
  }
  if (value.is_number_float()) {
    double d = value.get<double>();
    if (std::floor(d) != d || std::abs(d) > 1e6) return Answer::missing();
    const auto* option = options.find_code(std::to_string(static_cast<long long>(d)));
    return option ? Answer::numeric(option->raw_score) : Answer::missing();
  }
  if (value.is_string()) {
    std::string_view text = value.get_ref<const std::string&>();
    if (is_irrelevant_text(text, options)) return Answer::irrelevant();
    if (const auto* option = options.find_code(text)) return Answer::numeric(option->raw_score);
    if (const auto* option = options.find_label(text)) return Answer::numeric(option->raw_score);
    // "2: Strongly Agree"
    if (auto colon = text.find(':'); colon != std::string_view::npos) {
      if (const auto* option = options.find_code(text.substr(0, colon))) {
        return Answer::numeric(option->raw_score);
      }
    }
  }
  return Answer::missing();
}

std::optional<Answer> json_rung(std::string_view text, const OptionMap& options,
                                std::string_view value_name) {
  std::string name_lower = to_lower(value_name);
  for (std::size_t open = text.find('{'); open != std::string_view::npos;
       open = text.find('{', open + 1)) {
    auto end = object_end(text, open);
    if (end == std::string_view::npos) continue;
    auto doc = json::parse(text.substr(open, end - open), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) continue;
    for (const auto& [key, value] : doc.items()) {
      std::string key_lower = to_lower(trim(key));
      bool recognized = !name_lower.empty() && key_lower == name_lower;
      for (auto candidate : kScoreKeys) recognized = recognized || key_lower == candidate;
      if (recognized) return answer_from_json_value(value, options);
    }
  }
  return std::nullopt;
}

std::optional<Answer> integer_rung(std::string_view text, const OptionMap& options) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < text.size();) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t end = i;
    bool negative = false;
    std::size_t lead = start;
    if (start > 0 && (text[start - 1] == '-' || text[start - 1] == '+')) {
      negative = text[start - 1] == '-';
      lead = start - 1;
    }
    bool bounded_left = lead == 0 || (!is_word_char(text[lead - 1]) && text[lead - 1] != '.');
    if (lead != start && !bounded_left) {
      // "1-2": the sign is really a separator
      negative = false;
      lead = start;
      bounded_left = !is_word_char(text[start - 1]) && text[start - 1] != '.';
    }
    bool decimal_after = end + 1 < text.size() && text[end] == '.' &&
                         std::isdigit(static_cast<unsigned char>(text[end + 1]));
    bool bounded_right = end == text.size() || (!is_word_char(text[end]) && !decimal_after);
    if (bounded_left && bounded_right) {
      std::string token(text.substr(start, end - start));
      tokens.push_back(negative ? "-" + token : token);
    }
  }
  if (tokens.empty()) return std::nullopt;

  std::set<int> scores;
  for (const auto& token : tokens) {
    const auto* option = options.find_code(token);
    if (option == nullptr) return Answer::missing();
    scores.insert(option->raw_score);
  }
  return scores.size() == 1 ? Answer::numeric(*scores.begin()) : Answer::missing();
}

struct Span {
  std::size_t begin;
  std::size_t end;
  int raw;
};

std::vector<std::size_t> find_words(const std::string& haystack, const std::string& needle) {
  std::vector<std::size_t> hits;
  if (needle.empty()) return hits;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    bool left = pos == 0 || !is_word_char(haystack[pos - 1]);
    auto after = pos + needle.size();
    bool right = after == haystack.size() || !is_word_char(haystack[after]);
    if (left && right) hits.push_back(pos);
  }
  return hits;
}

std::optional<Answer> label_rung(const std::string& lower, const OptionMap& options) {
  std::vector<Span> spans;
  for (const auto& option : options.options) {
    auto label = to_lower(option.label);
    for (auto pos : find_words(lower, label)) {
      spans.push_back({pos, pos + label.size(), option.raw_score});
    }
  }
  std::set<int> scores;
  for (const auto& span : spans) {
    bool covered = false;
    for (const auto& other : spans) {
      bool longer = other.end - other.begin > span.end - span.begin;
      if (longer && other.begin <= span.begin && span.end <= other.end) covered = true;
    }
    if (!covered) scores.insert(span.raw);
  }
  if (scores.empty()) return std::nullopt;
  return scores.size() == 1 ? Answer::numeric(*scores.begin()) : Answer::missing();
}

}  // namespace

Answer parse_score(std::string_view completion, const OptionMap& options,
                   std::string_view value_name) {
  try {
    if (auto hit = json_rung(completion, options, value_name)) return *hit;
    if (auto hit = integer_rung(completion, options)) return *hit;
    std::string lower = to_lower(completion);
    if (auto hit = label_rung(lower, options)) return *hit;
    if (!find_words(lower, "irrelevant").empty()) return Answer::irrelevant();
    if (options.irrelevant_label && !find_words(lower, to_lower(*options.irrelevant_label)).empty()) {
      return Answer::irrelevant();
    }
  } catch (const std::exception&) {
    // the ladder is total; anything unexpected degrades to missing
  }
  return Answer::missing();
}

}  // namespace valuecompass
