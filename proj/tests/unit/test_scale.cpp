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

#include <limits>
#include <stdexcept>

#include "valuecompass/error.hpp"
#include "valuecompass/scale.hpp"

namespace valuecompass {
namespace {

TEST(Scale, UnitMapping) {
  EXPECT_EQ(scale_to_unit(-2), 0.0);
  EXPECT_EQ(scale_to_unit(-1), 0.25);
  EXPECT_EQ(scale_to_unit(0), 0.5);
  EXPECT_EQ(scale_to_unit(1), 0.75);
  EXPECT_EQ(scale_to_unit(2), 1.0);
}

TEST(Scale, OutOfRangeAndNonNumeric) {
  EXPECT_THROW(scale_to_unit(3), std::out_of_range);
  EXPECT_THROW(scale_to_unit(-3), std::out_of_range);
  EXPECT_THROW(scale_to_unit(Answer::irrelevant()), std::invalid_argument);
  EXPECT_THROW(scale_to_unit(Answer::missing()), std::invalid_argument);
  EXPECT_THROW(Answer::numeric(5), std::out_of_range);
}

TEST(Scale, MonotoneAndBounded) {
  for (int raw = -2; raw < 2; ++raw) {
    EXPECT_LT(scale_to_unit(raw), scale_to_unit(raw + 1));
    EXPECT_GE(scale_to_unit(raw), 0.0);
    EXPECT_LE(scale_to_unit(raw + 1), 1.0);
  }
}

TEST(Scale, Labels) {
  EXPECT_EQ(ResponseScale::label(-2), "Strongly Disagree");
  EXPECT_EQ(ResponseScale::label(0), "Neutral");
  EXPECT_EQ(ResponseScale::label(2), "Strongly Agree");
}

TEST(Scale, AnswerTokens) {
  EXPECT_EQ(parse_answer_token(""), Answer::missing());
  EXPECT_EQ(parse_answer_token("  "), Answer::missing());
  EXPECT_EQ(parse_answer_token("IRR"), Answer::irrelevant());
  EXPECT_EQ(parse_answer_token("Irrelevant"), Answer::irrelevant());
  EXPECT_EQ(parse_answer_token("-2"), Answer::numeric(-2));
  EXPECT_EQ(parse_answer_token(" 1 "), Answer::numeric(1));
  EXPECT_EQ(parse_answer_token("Agree"), Answer::numeric(1));
  EXPECT_FALSE(parse_answer_token("3").has_value());
  EXPECT_FALSE(parse_answer_token("maybe").has_value());
}

TEST(Scale, AnswerToString) {
  EXPECT_EQ(Answer::numeric(-1).to_string(), "-1");
  EXPECT_EQ(Answer::irrelevant().to_string(), "irrelevant");
  EXPECT_EQ(Answer::missing().to_string(), "missing");
}

TEST(OptionMaps, FivePoint) {
  auto map = OptionMap::five_point();
  ASSERT_EQ(map.options.size(), 5u);
  EXPECT_EQ(map.find_code("2")->raw_score, 2);
  EXPECT_EQ(map.find_code("+2")->raw_score, 2);
  EXPECT_EQ(map.find_code("-2")->label, "Strongly Disagree");
  EXPECT_EQ(map.find_label("strongly agree")->raw_score, 2);
  EXPECT_EQ(map.find_code("3"), nullptr);
  EXPECT_EQ(map.irrelevant_label, "Irrelevant");
}

TEST(OptionMaps, FourPointHasNoNeutral) {
  auto map = OptionMap::four_point();
  ASSERT_EQ(map.options.size(), 4u);
  EXPECT_EQ(map.find_code("1")->raw_score, 2);
  EXPECT_EQ(map.find_code("2")->raw_score, 1);
  EXPECT_EQ(map.find_code("3")->raw_score, -1);
  EXPECT_EQ(map.find_code("4")->raw_score, -2);
  EXPECT_EQ(map.find_label("Neutral"), nullptr);
}

TEST(OptionMaps, ByName) {
  EXPECT_EQ(OptionMap::by_name("five_point"), OptionMap::five_point());
  EXPECT_EQ(OptionMap::by_name("four_point"), OptionMap::four_point());
  EXPECT_THROW(OptionMap::by_name("seven_point"), ConfigError);
}

}  // namespace
}  // namespace valuecompass
