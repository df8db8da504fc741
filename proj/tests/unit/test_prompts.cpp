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
#include <sstream>

#include "support.hpp"
#include "valuecompass/catalog.hpp"
#include "valuecompass/error.hpp"
#include "valuecompass/prompts.hpp"

namespace valuecompass {
namespace {

TEST(Variants, IdsAreDenseAndInvertible) {
  std::set<int> ids;
  for (const auto& key : VariantKey::all()) {
    ids.insert(key.id());
    EXPECT_EQ(VariantKey::from_id(key.id()), key);
  }
  EXPECT_EQ(ids, (std::set<int>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_THROW(VariantKey::from_id(0), std::out_of_range);
  EXPECT_THROW(VariantKey::from_id(9), std::out_of_range);
  EXPECT_EQ(VariantKey::from_id(1).describe(), "context-first/SVS/score-key");
  EXPECT_EQ(VariantKey::from_id(8).describe(), "statement-first/PVQ/value-key");
}

TEST(Prompts, DefaultBatchSize) {
  PromptEngine engine;
  auto contexts = enumerate_contexts();
  auto batch = engine.batch(contexts, default_catalog());
  EXPECT_EQ(batch.size(), 28u * 56u * 8u);
  EXPECT_EQ(batch[0].context.index, 1);
  EXPECT_EQ(batch[0].value_id, 1);
  EXPECT_EQ(batch[0].variant.id(), 1);
  EXPECT_EQ(batch[7].variant.id(), 8);
  EXPECT_EQ(batch[8].value_id, 2);
}

TEST(Prompts, HealthcareOnly) {
  PromptEngine engine;
  auto batch = engine.batch(group_contexts("Healthcare"), default_catalog());
  EXPECT_EQ(batch.size(), 7u * 56u * 8u);
}

TEST(Prompts, EightDistinctVariantsCarryAllTokens) {
  PromptEngine engine;
  const auto& catalog = default_catalog();
  for (const auto& context : enumerate_contexts()) {
    for (const auto& value : {catalog[0], catalog[46]}) {
      std::set<std::string> texts;
      for (const auto& key : VariantKey::all()) {
        auto prompt = engine.render(context, value, key);
        texts.insert(prompt.text);
        EXPECT_NE(prompt.text.find(value.name), std::string::npos);
        EXPECT_NE(prompt.text.find(value.definition), std::string::npos);
        EXPECT_NE(prompt.text.find(country_name(context.country)), std::string::npos);
        EXPECT_NE(prompt.text.find(topic_name(context.topic)), std::string::npos);
        EXPECT_NE(prompt.text.find(engine.vignettes().text(context.topic)), std::string::npos);
      }
      EXPECT_EQ(texts.size(), 8u);
    }
  }
}

TEST(Prompts, ScenarioOrderToggles) {
  PromptEngine engine;
  auto context = context_at(1);
  const auto& value = default_catalog()[0];
  auto first = engine.render(context, value, VariantKey::from_id(1)).text;
  auto second = engine.render(context, value, VariantKey::from_id(5)).text;
  EXPECT_LT(first.find("United States"), first.find("Value: Equality"));
  EXPECT_GT(second.find("United States"), second.find("Value: Equality"));
}

TEST(Prompts, RequirementKeys) {
  PromptEngine engine;
  auto context = context_at(3);
  const auto& value = default_catalog()[4];
  auto score_key = engine.render(context, value, VariantKey::from_id(1)).text;
  auto value_key = engine.render(context, value, VariantKey::from_id(2)).text;
  EXPECT_NE(score_key.find("\"score\""), std::string::npos);
  EXPECT_NE(value_key.find("\"" + value.name + "\""), std::string::npos);
}

TEST(Prompts, FourPointOptionsListed) {
  PromptEngine engine(Vignettes::defaults(), OptionMap::four_point());
  auto text = engine.render(context_at(1), default_catalog()[0], VariantKey::from_id(1)).text;
  EXPECT_NE(text.find("4: Strongly Disagree"), std::string::npos);
  EXPECT_EQ(text.find("Neutral"), std::string::npos);
}

TEST(Prompts, Deterministic) {
  PromptEngine a;
  PromptEngine b;
  auto contexts = enumerate_contexts();
  std::ostringstream x;
  std::ostringstream y;
  write_prompt_batch(x, a.batch(contexts, default_catalog()));
  write_prompt_batch(y, b.batch(contexts, default_catalog()));
  EXPECT_EQ(x.str(), y.str());
}

TEST(Prompts, JsonlRoundTrip) {
  PromptEngine engine;
  auto prompt = engine.render(context_at(9), default_catalog()[20], VariantKey::from_id(6));
  auto back = prompt_from_jsonl(prompt_to_jsonl(prompt));
  EXPECT_EQ(back.context, prompt.context);
  EXPECT_EQ(back.value_id, prompt.value_id);
  EXPECT_EQ(back.value_name, prompt.value_name);
  EXPECT_EQ(back.variant, prompt.variant);
  EXPECT_EQ(back.text, prompt.text);
  EXPECT_EQ(back.option_map, prompt.option_map);
  EXPECT_THROW(prompt_from_jsonl("not json"), ParseError);
  EXPECT_THROW(prompt_from_jsonl("{\"context_index\": 1}"), ParseError);
}

TEST(ValueForm, HumanFormHasTwoAttentionChecks) {
  PromptEngine engine;
  auto form = engine.value_form(context_at(1), default_catalog(), Audience::human);
  ASSERT_EQ(form.statements.size(), 58u);
  EXPECT_EQ(form.statements[18].kind, FormStatement::Kind::attention_check);
  EXPECT_EQ(form.statements[18].expected_raw, 2);
  EXPECT_EQ(form.statements[38].kind, FormStatement::Kind::attention_check);
  EXPECT_EQ(form.statements[38].expected_raw, -2);
  EXPECT_EQ(form.statements[17].value_id, 18);
  EXPECT_EQ(form.statements[19].value_id, 19);
  EXPECT_FALSE(form.vignette.empty());
}

TEST(ValueForm, ModelFormHasNone) {
  PromptEngine engine;
  auto form = engine.value_form(context_at(1), default_catalog(), Audience::model);
  ASSERT_EQ(form.statements.size(), 56u);
  for (const auto& s : form.statements) EXPECT_EQ(s.kind, FormStatement::Kind::value);
}

TEST(ValueForm, ShortCatalogClampsCheckPositions) {
  PromptEngine engine;
  Catalog small(default_catalog().begin(), default_catalog().begin() + 10);
  auto form = engine.value_form(context_at(1), small, Audience::human);
  ASSERT_EQ(form.statements.size(), 12u);
  EXPECT_EQ(form.statements[10].kind, FormStatement::Kind::attention_check);
  EXPECT_EQ(form.statements[11].kind, FormStatement::Kind::attention_check);
}

}  // namespace
}  // namespace valuecompass
