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
#include <compare>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "valuecompass/catalog.hpp"
#include "valuecompass/contexts.hpp"
#include "valuecompass/scale.hpp"

namespace valuecompass {

enum class ScenarioVariant { context_first, statement_first };

/// SVS asks for a direct inclination toward the value; PVQ asks about a
/// person for whom the value is important.
enum class StatementStyle { svs, pvq };

enum class RequirementVariant { score_key, value_key };

/// One of the 2 x 2 x 2 prompt variants. Ids 1..8 follow the lexicographic
/// order (scenario, statement, requirement).
struct VariantKey {
  ScenarioVariant scenario = ScenarioVariant::context_first;
  StatementStyle statement = StatementStyle::svs;
  RequirementVariant requirement = RequirementVariant::score_key;

  int id() const noexcept;
  static VariantKey from_id(int id);  // throws std::out_of_range
  static std::array<VariantKey, 8> all();
  std::string describe() const;

  auto operator<=>(const VariantKey&) const = default;
};

inline constexpr std::size_t kVariantCount = 8;

struct Prompt {
  Context context;
  int value_id = 0;
  std::string value_name;
  VariantKey variant;
  std::string text;
  OptionMap option_map;
};

enum class Audience { human, model };

struct FormStatement {
  enum class Kind { value, attention_check };
  Kind kind = Kind::value;
  int value_id = 0;  // 0 for attention checks
  std::string text;
  std::optional<int> expected_raw;  // attention checks only
};

struct ValueForm {
  std::string introduction;
  std::string vignette;
  std::vector<FormStatement> statements;
};

/// Attention checks follow these value statements in the human form.
inline constexpr std::array<std::size_t, 2> kAttentionCheckAfter{18, 37};

/// Renders the instrument into model prompts and survey forms. Stateless
/// after construction; safe to share between threads.
class PromptEngine {
 public:
  explicit PromptEngine(Vignettes vignettes = Vignettes::defaults(),
                        OptionMap options = OptionMap::five_point());

  Prompt render(const Context& context, const ValueItem& value, VariantKey variant) const;

  /// Every (context, value, variant) in that nesting order.
  std::vector<Prompt> batch(std::span<const Context> contexts,
                            std::span<const ValueItem> values) const;

  ValueForm value_form(const Context& context, std::span<const ValueItem> values,
                       Audience audience) const;

  const OptionMap& options() const noexcept { return options_; }
  const Vignettes& vignettes() const noexcept { return vignettes_; }

 private:
  std::string scenario_block(const Context& context, ScenarioVariant variant) const;
  std::string statement_block(const ValueItem& value, StatementStyle style) const;
  std::string requirement_block(const ValueItem& value, RequirementVariant variant) const;

  Vignettes vignettes_;
  OptionMap options_;
};

/// Line-oriented batch export: context_index, value_id, variant_id, text,
/// option_map (plus value_name).
std::string prompt_to_jsonl(const Prompt& prompt);
Prompt prompt_from_jsonl(std::string_view line);  // throws ParseError

void write_prompt_batch(std::ostream& out, std::span<const Prompt> prompts);
std::vector<Prompt> read_prompt_batch(const std::filesystem::path& path);

}  // namespace valuecompass
