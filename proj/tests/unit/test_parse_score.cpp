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

#include <fstream>
#include <nlohmann/json.hpp>
#include <random>

#include "support.hpp"
#include "valuecompass/gateway.hpp"

namespace valuecompass {
namespace {

Answer expected_of(const nlohmann::json& value) {
  if (value.is_number_integer()) return Answer::numeric(value.get<int>());
  return value.get<std::string>() == "irrelevant" ? Answer::irrelevant() : Answer::missing();
}

TEST(ParseScore, CorpusMatchesLadder) {
  std::ifstream in(testing::fixture("parse_corpus.jsonl"));
  ASSERT_TRUE(in);
  std::string line;
  int cases = 0;
  int malformed = 0;
  while (std::getline(in, line)) {
    auto entry = nlohmann::json::parse(line);
    auto options = OptionMap::by_name(entry["scale"].get<std::string>());
    auto completion = entry["completion"].get<std::string>();
    auto expected = expected_of(entry["expected"]);
    Answer actual = Answer::missing();
    EXPECT_NO_THROW(actual = parse_score(completion, options, entry["value_name"].get<std::string>()));
    EXPECT_EQ(actual, expected) << "case " << entry["id"] << " (" << entry["rung"].get<std::string>()
                                << "): " << completion;
    ++cases;
    if (entry["rung"].get<std::string>() != "json") ++malformed;
  }
  EXPECT_GE(cases, 30);
  EXPECT_GE(malformed, 20);
}

TEST(ParseScore, ValueNameKeyIsCaseInsensitive) {
  EXPECT_EQ(parse_score(R"({"EQUALITY": 1})", OptionMap::five_point(), "Equality"), Answer::numeric(1));
}

TEST(ParseScore, UnknownKeyFallsThrough) {
  EXPECT_EQ(parse_score(R"({"Wealth": 1})", OptionMap::five_point(), "Equality"), Answer::numeric(1));
  EXPECT_EQ(parse_score(R"({"x": "Agree"})", OptionMap::five_point(), "Equality"), Answer::numeric(1));
}

TEST(ParseScore, LongerLabelCoversShorter) {
  EXPECT_EQ(parse_score("Strongly Agree", OptionMap::five_point()), Answer::numeric(2));
  EXPECT_EQ(parse_score("strongly disagree", OptionMap::five_point()), Answer::numeric(-2));
  EXPECT_EQ(parse_score("Agree. I strongly agree.", OptionMap::five_point()), Answer::missing());
}

TEST(ParseScore, RandomBytesNeverThrow) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> length(0, 200);
  const std::string alphabet = "{}\"':,-+0123456789 .agreAGREstronglyirelvn\n\[]";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int i = 0; i < 5000; ++i) {
    std::string text;
    int n = length(rng);
    for (int k = 0; k < n; ++k) {
      text.push_back(i % 2 ? static_cast<char>(byte(rng)) : alphabet[pick(rng)]);
    }
    for (const auto& options : {OptionMap::five_point(), OptionMap::four_point()}) {
      EXPECT_NO_THROW(parse_score(text, options, "Equality"));
    }
  }
}

TEST(ParseScore, ExactCodeRoundTrip) {
  for (const auto& options : {OptionMap::five_point(), OptionMap::four_point()}) {
    for (const auto& option : options.options) {
      EXPECT_EQ(parse_score("{\"score\": " + option.code + "}", options), Answer::numeric(option.raw_score));
      EXPECT_EQ(parse_score("My answer: " + option.label + ".", options),
                Answer::numeric(option.raw_score));
    }
  }
}

}  // namespace
}  // namespace valuecompass
