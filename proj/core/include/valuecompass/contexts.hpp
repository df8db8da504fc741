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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valuecompass {

enum class Country { united_states, united_kingdom, india, germany, france, canada, australia };

enum class Topic {
  educational_supervision,
  collaborative_writing,
  public_sector_finance,
  healthcare,
};

enum class PopulationAxis { individual, social };
enum class StakesAxis { low, high };

inline constexpr std::array<Country, 7> kCountries{
    Country::united_states, Country::united_kingdom, Country::india, Country::germany,
    Country::france,        Country::canada,         Country::australia};

inline constexpr std::array<Topic, 4> kTopics{
    Topic::educational_supervision, Topic::collaborative_writing,
    Topic::public_sector_finance, Topic::healthcare};

inline constexpr std::size_t kContextCount = kCountries.size() * kTopics.size();

std::string_view country_name(Country country);
std::string_view topic_name(Topic topic);
PopulationAxis population_axis(Topic topic);
StakesAxis stakes_axis(Topic topic);

/// 1-based rank in the canonical listing order.
int country_rank(Country country);
int topic_rank(Topic topic);

/// Case-insensitive; also accepts short aliases ("USA", "UK", "Education",
/// "Co-Writing", "Public Sectors").
std::optional<Country> country_from_name(std::string_view name);
std::optional<Topic> topic_from_name(std::string_view name);

/// One (country, topic) scenario. `index` is 1-based and topic-major:
/// index = 7 * (topic_rank - 1) + country_rank.
struct Context {
  int index = 0;
  Country country = Country::united_states;
  Topic topic = Topic::educational_supervision;

  std::size_t row() const noexcept { return static_cast<std::size_t>(index - 1); }
  friend bool operator==(const Context&, const Context&) = default;
};

int context_index(Country country, Topic topic);
Context make_context(Country country, Topic topic);
/// Throws ScopeError outside [1, 28].
Context context_at(int index);

std::vector<Context> enumerate_contexts();

/// A grouping over contexts: everything, one country, one topic, or one
/// context.
class Scope {
 public:
  enum class Kind { all, country, topic, context };

  static Scope all() { return Scope(Kind::all, {}, {}, 0); }
  static Scope of(Country country) { return Scope(Kind::country, country, {}, 0); }
  static Scope of(Topic topic) { return Scope(Kind::topic, {}, topic, 0); }
  static Scope of(const Context& context) {
    return Scope(Kind::context, context.country, context.topic, context.index);
  }

  /// "all", a country or topic name (or alias), or a context index.
  /// Throws ScopeError for anything else.
  static Scope parse(std::string_view selector);

  Kind kind() const noexcept { return kind_; }
  Country country() const noexcept { return country_; }
  Topic topic() const noexcept { return topic_; }

  std::string_view kind_name() const;
  std::string label() const;
  bool contains(const Context& context) const;

  friend bool operator==(const Scope&, const Scope&) = default;

 private:
  Scope(Kind kind, Country country, Topic topic, int index)
      : kind_(kind), country_(country), topic_(topic), index_(index) {}
  Kind kind_;
  Country country_;
  Topic topic_;
  int index_;
};

std::vector<Context> group_contexts(const Scope& scope);
std::vector<Context> group_contexts(std::string_view selector);

/// Zero-based matrix rows covered by `scope`, ascending.
std::vector<std::size_t> scope_rows(const Scope& scope);

std::vector<Scope> country_scopes();
std::vector<Scope> topic_scopes();

/// Scenario text shown with every statement of a topic.
class Vignettes {
 public:
  /// Repository-authored defaults, one per topic.
  static Vignettes defaults();
  /// JSON object mapping topic name to text; every topic must be present.
  /// Throws ConfigError for a missing topic, ParseError for bad JSON.
  static Vignettes parse(std::string_view json_text);
  static Vignettes load(const std::filesystem::path& path);

  const std::string& text(Topic topic) const { return texts_.at(topic); }
  std::string to_json() const;

 private:
  std::map<Topic, std::string> texts_;
};

}  // namespace valuecompass
