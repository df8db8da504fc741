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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valuecompass {

/// One answer on the agreement scale: a raw score in [-2, 2], the
/// "Irrelevant" marker, or missing (blank survey cell, failed parse).
class Answer {
 public:
  enum class Kind { numeric, irrelevant, missing };

  static Answer numeric(int raw);  // throws std::out_of_range outside [-2, 2]
  static Answer irrelevant() { return Answer(Kind::irrelevant, 0); }
  static Answer missing() { return Answer(Kind::missing, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_numeric() const noexcept { return kind_ == Kind::numeric; }
  bool is_irrelevant() const noexcept { return kind_ == Kind::irrelevant; }
  bool is_missing() const noexcept { return kind_ == Kind::missing; }

  /// Raw score; only meaningful for numeric answers.
  int raw() const noexcept { return raw_; }

  std::string to_string() const;

  friend bool operator==(const Answer&, const Answer&) = default;

 private:
  Answer(Kind kind, int raw) : kind_(kind), raw_(raw) {}
  Kind kind_;
  int raw_;
};

struct ScaleLevel {
  int raw;
  std::string_view label;
};

/// Five-level agreement scale plus the non-numeric "Irrelevant" level.
struct ResponseScale {
  static constexpr int kMin = -2;
  static constexpr int kMax = 2;
  static constexpr std::array<ScaleLevel, 5> kLevels{{
      {-2, "Strongly Disagree"},
      {-1, "Disagree"},
      {0, "Neutral"},
      {1, "Agree"},
      {2, "Strongly Agree"},
  }};
  static constexpr std::string_view kIrrelevantLabel = "Irrelevant";

  static std::string_view label(int raw);
};

/// Maps a raw score onto the unit interval: (raw + 2) / 4.
/// Throws std::out_of_range for scores outside [-2, 2].
double scale_to_unit(int raw);

/// Throws std::invalid_argument for irrelevant or missing answers; those
/// belong to missing-cell handling, never to the numeric mean.
double scale_to_unit(const Answer& answer);

/// Parses a survey token: an integer score, "IRR"/"Irrelevant", or a scale
/// label such as "Strongly Agree" (case-insensitive). Blank → missing.
/// Returns nullopt for anything else.
std::optional<Answer> parse_answer_token(std::string_view token);

/// One option as shown to a model: the code it should answer with, the
/// human-readable label, and the raw score it stands for.
struct ScaleOption {
  std::string code;
  std::string label;
  int raw_score = 0;

  friend bool operator==(const ScaleOption&, const ScaleOption&) = default;
};

/// Option labels rendered into prompts and their mapping back to raw scores.
struct OptionMap {
  std::string name;
  std::vector<ScaleOption> options;
  std::optional<std::string> irrelevant_label;

  /// -2..2 codes with the five agreement labels plus "Irrelevant".
  static OptionMap five_point();
  /// 1: strongly agree, 2: agree, 3: disagree, 4: strongly disagree.
  static OptionMap four_point();
  /// "five_point" or "four_point"; throws ConfigError otherwise.
  static OptionMap by_name(std::string_view name);

  const ScaleOption* find_code(std::string_view code) const;
  const ScaleOption* find_label(std::string_view label) const;  // case-insensitive

  friend bool operator==(const OptionMap&, const OptionMap&) = default;
};

}  // namespace valuecompass
