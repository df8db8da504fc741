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

#include "valuecompass/contexts.hpp"

#include <algorithm>
#include <charconv>

#include <nlohmann/json.hpp>

#include "valuecompass/error.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass {
namespace {

constexpr std::string_view kDefaultVignettesJson = R"json({
  "Educational Supervision": "A secondary school has introduced an AI assistant that helps teachers supervise students during coursework. The assistant watches how students progress through online exercises, flags pupils who seem to be struggling, and suggests when a teacher should step in. It drafts short feedback notes on homework, proposes study plans for the whole class, and reports patterns of absence or late submissions to the school. Teachers review its suggestions before anything reaches students or parents, but the assistant's recommendations shape how attention and support are shared across the class.",
  "Collaborative Writing": "A writer is working on a personal essay with the help of an AI writing assistant. The assistant proposes outlines, rewrites sentences for clarity, suggests alternative word choices, and points out passages that may be unclear or repetitive. It can draft whole paragraphs when asked, and it comments on tone and structure. The writer decides which suggestions to accept, but the assistant's ideas influence the voice, arguments and final shape of a text that will be published under the writer's own name.",
  "Finance Support for Public Sectors": "A city government uses an AI system to support decisions about the public budget. The system analyses spending records, forecasts demand for services such as transport, housing and social care, and recommends how funds could be distributed among departments and neighbourhoods. It produces briefings for officials and highlights programs it considers inefficient. Elected representatives make the final decisions, but the system's analyses influence which communities receive funding and how public money is spent on behalf of residents.",
  "Healthcare": "A patient visits a clinic where an AI assistant supports the doctor during diagnosis and treatment planning. The assistant reviews the patient's medical history, test results and symptoms, suggests possible diagnoses, and recommends treatment options with their expected risks and benefits. It also drafts explanations that the doctor can share with the patient. The doctor remains responsible for every decision, but the assistant's suggestions affect what the patient hears about their condition and which treatments are considered."
}
)json";

struct CountryInfo {
  Country country;
  std::string_view name;
  std::array<std::string_view, 3> aliases;
};

constexpr std::array<CountryInfo, 7> kCountryInfo{{
    {Country::united_states, "United States", {"usa", "us", "united states of america"}},
    {Country::united_kingdom, "United Kingdom", {"uk", "great britain", ""}},
    {Country::india, "India", {"", "", ""}},
    {Country::germany, "Germany", {"", "", ""}},
    {Country::france, "France", {"", "", ""}},
    {Country::canada, "Canada", {"", "", ""}},
    {Country::australia, "Australia", {"", "", ""}},
}};

struct TopicInfo {
  Topic topic;
  std::string_view name;
  PopulationAxis population;
  StakesAxis stakes;
  std::array<std::string_view, 3> aliases;
};

constexpr std::array<TopicInfo, 4> kTopicInfo{{
    {Topic::educational_supervision, "Educational Supervision", PopulationAxis::social,
     StakesAxis::low, {"education", "educational", ""}},
    {Topic::collaborative_writing, "Collaborative Writing", PopulationAxis::individual,
     StakesAxis::low, {"co-writing", "cowriting", "writing"}},
    {Topic::public_sector_finance, "Finance Support for Public Sectors", PopulationAxis::social,
     StakesAxis::high, {"public sectors", "public sector", "finance"}},
    {Topic::healthcare, "Healthcare", PopulationAxis::individual, StakesAxis::high,
     {"health", "", ""}},
}};

const CountryInfo& info(Country country) { return kCountryInfo[static_cast<std::size_t>(country)]; }
const TopicInfo& info(Topic topic) { return kTopicInfo[static_cast<std::size_t>(topic)]; }

}  // namespace

std::string_view country_name(Country country) { return info(country).name; }
std::string_view topic_name(Topic topic) { return info(topic).name; }
PopulationAxis population_axis(Topic topic) { return info(topic).population; }
StakesAxis stakes_axis(Topic topic) { return info(topic).stakes; }
int country_rank(Country country) { return static_cast<int>(country) + 1; }
int topic_rank(Topic topic) { return static_cast<int>(topic) + 1; }

std::optional<Country> country_from_name(std::string_view name) {
  std::string lower = to_lower(trim(name));
  if (lower.empty()) return std::nullopt;
  for (const auto& c : kCountryInfo) {
    if (lower == to_lower(c.name)) return c.country;
    for (auto alias : c.aliases) {
      if (!alias.empty() && lower == alias) return c.country;
    }
  }
  return std::nullopt;
}

std::optional<Topic> topic_from_name(std::string_view name) {
  std::string lower = to_lower(trim(name));
  if (lower.empty()) return std::nullopt;
  for (const auto& t : kTopicInfo) {
    if (lower == to_lower(t.name)) return t.topic;
    for (auto alias : t.aliases) {
      if (!alias.empty() && lower == alias) return t.topic;
    }
  }
  return std::nullopt;
}

int context_index(Country country, Topic topic) {
  return static_cast<int>(kCountries.size()) * (topic_rank(topic) - 1) + country_rank(country);
}

Context make_context(Country country, Topic topic) {
  return Context{context_index(country, topic), country, topic};
}

Context context_at(int index) {
  if (index < 1 || index > static_cast<int>(kContextCount)) {
    throw ScopeError("context index " + std::to_string(index) + " outside [1, 28]");
  }
  int zero = index - 1;
  auto per_topic = static_cast<int>(kCountries.size());
  return Context{index, kCountries[static_cast<std::size_t>(zero % per_topic)],
                 kTopics[static_cast<std::size_t>(zero / per_topic)]};
}

std::vector<Context> enumerate_contexts() {
  std::vector<Context> contexts;
  contexts.reserve(kContextCount);
  for (Topic topic : kTopics) {
    for (Country country : kCountries) contexts.push_back(make_context(country, topic));
  }
  return contexts;
}

Scope Scope::parse(std::string_view selector) {
  auto trimmed = trim(selector);
  if (to_lower(trimmed) == "all") return all();
  if (auto country = country_from_name(trimmed)) return of(*country);
  if (auto topic = topic_from_name(trimmed)) return of(*topic);
  int index = 0;
  auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), index);
  if (ec == std::errc{} && ptr == trimmed.data() + trimmed.size() && !trimmed.empty()) {
    return of(context_at(index));
  }
  throw ScopeError("unknown scope '" + std::string(selector) + "'");
}

std::string_view Scope::kind_name() const {
  switch (kind_) {
    case Kind::all:
      return "all";
    case Kind::country:
      return "country";
    case Kind::topic:
      return "topic";
    case Kind::context:
      break;
  }
  return "context";
}

std::string Scope::label() const {
  switch (kind_) {
    case Kind::all:
      return "All";
    case Kind::country:
      return std::string(country_name(country_));
    case Kind::topic:
      return std::string(topic_name(topic_));
    case Kind::context:
      break;
  }
  return std::to_string(index_);
}

bool Scope::contains(const Context& context) const {
  switch (kind_) {
    case Kind::all:
      return true;
    case Kind::country:
      return context.country == country_;
    case Kind::topic:
      return context.topic == topic_;
    case Kind::context:
      break;
  }
  return context.index == index_;
}

std::vector<Context> group_contexts(const Scope& scope) {
  std::vector<Context> out;
  for (const auto& context : enumerate_contexts()) {
    if (scope.contains(context)) out.push_back(context);
  }
  return out;
}

std::vector<Context> group_contexts(std::string_view selector) {
  return group_contexts(Scope::parse(selector));
}

std::vector<std::size_t> scope_rows(const Scope& scope) {
  std::vector<std::size_t> rows;
  for (const auto& context : group_contexts(scope)) rows.push_back(context.row());
  return rows;
}

std::vector<Scope> country_scopes() {
  std::vector<Scope> scopes;
  for (Country c : kCountries) scopes.push_back(Scope::of(c));
  return scopes;
}

std::vector<Scope> topic_scopes() {
  std::vector<Scope> scopes;
  for (Topic t : kTopics) scopes.push_back(Scope::of(t));
  return scopes;
}

Vignettes Vignettes::defaults() { return parse(kDefaultVignettesJson); }

Vignettes Vignettes::parse(std::string_view json_text) {
  auto doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ParseError("vignette file must be a JSON object of topic -> text");
  }
  Vignettes out;
  for (const auto& [key, value] : doc.items()) {
    auto topic = topic_from_name(key);
    if (!topic) throw ConfigError("vignette file names unknown topic '" + key + "'");
    if (!value.is_string() || trim(value.get_ref<const std::string&>()).empty()) {
      throw ConfigError("vignette for '" + key + "' must be non-empty text");
    }
    out.texts_[*topic] = value.get<std::string>();
  }
  for (Topic topic : kTopics) {
    if (!out.texts_.contains(topic)) {
      throw ConfigError("vignette file is missing topic '" + std::string(topic_name(topic)) + "'");
    }
  }
  return out;
}

Vignettes Vignettes::load(const std::filesystem::path& path) { return parse(read_file(path)); }

std::string Vignettes::to_json() const {
  nlohmann::ordered_json doc;
  for (Topic topic : kTopics) doc[std::string(topic_name(topic))] = texts_.at(topic);
  return doc.dump(2) + "\n";
}

}  // namespace valuecompass
