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
#include <gtest/gtest.h>

#include <set>

#include "support.hpp"
#include "valuecompass/contexts.hpp"
#include "valuecompass/error.hpp"

namespace valuecompass {
namespace {

TEST(Contexts, TwentyEightUniqueTopicMajor) {
  auto contexts = enumerate_contexts();
  ASSERT_EQ(contexts.size(), 28u);
  std::set<std::pair<Country, Topic>> seen;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    EXPECT_EQ(contexts[i].index, static_cast<int>(i + 1));
    seen.insert({contexts[i].country, contexts[i].topic});
  }
  EXPECT_EQ(seen.size(), 28u);
  EXPECT_EQ(contexts[0], make_context(Country::united_states, Topic::educational_supervision));
  EXPECT_EQ(contexts[7], make_context(Country::united_states, Topic::collaborative_writing));
  EXPECT_EQ(contexts[27], make_context(Country::australia, Topic::healthcare));
}

TEST(Contexts, IndexFormula) {
  for (Topic topic : kTopics) {
    for (Country country : kCountries) {
      EXPECT_EQ(context_index(country, topic), 7 * (topic_rank(topic) - 1) + country_rank(country));
      EXPECT_EQ(context_at(context_index(country, topic)).country, country);
    }
  }
  EXPECT_THROW(context_at(0), ScopeError);
  EXPECT_THROW(context_at(29), ScopeError);
}

TEST(Contexts, Axes) {
  EXPECT_EQ(population_axis(Topic::educational_supervision), PopulationAxis::social);
  EXPECT_EQ(stakes_axis(Topic::educational_supervision), StakesAxis::low);
  EXPECT_EQ(population_axis(Topic::collaborative_writing), PopulationAxis::individual);
  EXPECT_EQ(stakes_axis(Topic::collaborative_writing), StakesAxis::low);
  EXPECT_EQ(population_axis(Topic::public_sector_finance), PopulationAxis::social);
  EXPECT_EQ(stakes_axis(Topic::public_sector_finance), StakesAxis::high);
  EXPECT_EQ(population_axis(Topic::healthcare), PopulationAxis::individual);
  EXPECT_EQ(stakes_axis(Topic::healthcare), StakesAxis::high);
}

TEST(Contexts, GroupByTopicCountryAll) {
  auto health = group_contexts("Healthcare");
  ASSERT_EQ(health.size(), 7u);
  for (const auto& c : health) EXPECT_EQ(c.topic, Topic::healthcare);
  auto germany = group_contexts("Germany");
  ASSERT_EQ(germany.size(), 4u);
  for (const auto& c : germany) EXPECT_EQ(c.country, Country::germany);
  EXPECT_EQ(group_contexts("all").size(), 28u);
  EXPECT_EQ(group_contexts("12").size(), 1u);
}

TEST(Contexts, UnknownScope) {
  EXPECT_THROW(group_contexts("Japan"), ScopeError);
  EXPECT_THROW(Scope::parse("29"), ScopeError);
}

TEST(Contexts, Aliases) {
  EXPECT_EQ(country_from_name("USA"), Country::united_states);
  EXPECT_EQ(country_from_name("uk"), Country::united_kingdom);
  EXPECT_EQ(topic_from_name("health"), Topic::healthcare);
  EXPECT_FALSE(country_from_name("Atlantis").has_value());
}

TEST(Contexts, ScopesPartition) {
  for (const auto& scopes : {country_scopes(), topic_scopes()}) {
    std::set<std::size_t> rows;
    std::size_t total = 0;
    for (const auto& scope : scopes) {
      auto r = scope_rows(scope);
      total += r.size();
      rows.insert(r.begin(), r.end());
    }
    EXPECT_EQ(total, 28u);
    EXPECT_EQ(rows.size(), 28u);
  }
}

TEST(Vignettes, DefaultsCoverEveryTopic) {
  auto v = Vignettes::defaults();
  for (Topic topic : kTopics) EXPECT_GT(v.text(topic).size(), 100u);
  EXPECT_EQ(Vignettes::parse(v.to_json()).to_json(), v.to_json());
}

TEST(Vignettes, MissingTopicIsConfigError) {
  EXPECT_THROW(Vignettes::parse(R"({"Healthcare": "text"})"), ConfigError);
  EXPECT_THROW(Vignettes::parse("[1,2]"), ParseError);
}

TEST(Vignettes, DataFileMatchesDefaults) {
  EXPECT_EQ(Vignettes::load(testing::source_dir() / "core/data/vignettes.json").to_json(),
            Vignettes::defaults().to_json());
}

}  // namespace
}  // namespace valuecompass
