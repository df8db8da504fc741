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
#include "valuecompass/scale.hpp"

#include <charconv>
#include <stdexcept>

#include "valuecompass/error.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass {

Answer Answer::numeric(int raw) {
  if (raw < ResponseScale::kMin || raw > ResponseScale::kMax) {
    throw std::out_of_range("raw score " + std::to_string(raw) + " outside [-2, 2]");
  }
  return Answer(Kind::numeric, raw);
}

std::string Answer::to_string() const {
  switch (kind_) {
    case Kind::numeric:
      return std::to_string(raw_);
    case Kind::irrelevant:
      return "irrelevant";
    case Kind::missing:
      break;
  }
  return "missing";
}

std::string_view ResponseScale::label(int raw) {
  for (const auto& level : kLevels) {
    if (level.raw == raw) return level.label;
  }
  throw std::out_of_range("raw score " + std::to_string(raw) + " outside [-2, 2]");
}

double scale_to_unit(int raw) {
  if (raw < ResponseScale::kMin || raw > ResponseScale::kMax) {
    throw std::out_of_range("raw score " + std::to_string(raw) + " outside [-2, 2]");
  }
  return (raw + 2) / 4.0;
}

double scale_to_unit(const Answer& answer) {
  if (!answer.is_numeric()) {
    throw std::invalid_argument("cannot normalize a " + answer.to_string() + " answer");
  }
  return scale_to_unit(answer.raw());
}

std::optional<Answer> parse_answer_token(std::string_view token) {
  token = trim(token);
  if (token.empty()) return Answer::missing();
  std::string lower = to_lower(token);
  if (lower == "irr" || lower == "irrelevant") return Answer::irrelevant();

  std::string_view digits = token;
  if (digits.starts_with('+')) digits.remove_prefix(1);
  int raw = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), raw);
  if (ec == std::errc{} && ptr == digits.data() + digits.size()) {
    if (raw < ResponseScale::kMin || raw > ResponseScale::kMax) return std::nullopt;
    return Answer::numeric(raw);
  }
  for (const auto& level : ResponseScale::kLevels) {
    if (lower == to_lower(level.label)) return Answer::numeric(level.raw);
  }
  return std::nullopt;
}

OptionMap OptionMap::five_point() {
  OptionMap map{"five_point", {}, std::string(ResponseScale::kIrrelevantLabel)};
  for (const auto& level : ResponseScale::kLevels) {
    map.options.push_back({std::to_string(level.raw), std::string(level.label), level.raw});
  }
  return map;
}

OptionMap OptionMap::four_point() {
  return OptionMap{"four_point",
                   {{"1", "Strongly Agree", 2},
                    {"2", "Agree", 1},
                    {"3", "Disagree", -1},
                    {"4", "Strongly Disagree", -2}},
                   std::string(ResponseScale::kIrrelevantLabel)};
}

OptionMap OptionMap::by_name(std::string_view name) {
  if (name == "five_point") return five_point();
  if (name == "four_point") return four_point();
  throw ConfigError("unknown scale '" + std::string(name) +
                    "' (expected five_point or four_point)");
}

const ScaleOption* OptionMap::find_code(std::string_view code) const {
  code = trim(code);
  if (code.starts_with('+')) code.remove_prefix(1);
  for (const auto& option : options) {
    if (option.code == code) return &option;
  }
  return nullptr;
}

const ScaleOption* OptionMap::find_label(std::string_view label) const {
  std::string lower = to_lower(trim(label));
  for (const auto& option : options) {
    if (to_lower(option.label) == lower) return &option;
  }
  return nullptr;
}

}  // namespace valuecompass
