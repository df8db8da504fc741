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
#include "valuecompass/catalog.hpp"
#include "valuecompass/error.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass {
namespace {

std::string catalog_with(std::size_t rows) {
  std::string text = "id,name,definition\n";
  for (std::size_t i = 1; i <= rows; ++i) {
    text += std::to_string(i) + ",Value " + std::to_string(i) + ",definition " + std::to_string(i) + "\n";
  }
  return text;
}

TEST(Catalog, DefaultHasFiftySixContiguousUniqueValues) {
  const auto& catalog = default_catalog();
  ASSERT_EQ(catalog.size(), 56u);
  std::set<std::string> names;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    EXPECT_EQ(catalog[i].id, static_cast<int>(i + 1));
    EXPECT_FALSE(catalog[i].definition.empty());
    names.insert(catalog[i].name);
  }
  EXPECT_EQ(names.size(), 56u);
}

TEST(Catalog, KnownEntries) {
  const auto& catalog = default_catalog();
  EXPECT_EQ(catalog[0].name, "Equality");
  EXPECT_EQ(catalog[0].definition, "equal opportunity for all");
  EXPECT_EQ(catalog[46].name, "Obedient");
  EXPECT_EQ(catalog[46].definition, "dutiful, meeting obligations");
}

TEST(Catalog, EmbeddedCopyMatchesDataFile) {
  EXPECT_EQ(read_file(testing::source_dir() / "core/data/values.csv"), default_catalog_csv());
}

TEST(Catalog, FiftyFiveRowsIsCardinalityError) {
  try {
    parse_catalog(catalog_with(55));
    FAIL() << "expected CardinalityError";
  } catch (const CardinalityError& e) {
    EXPECT_EQ(e.found(), 55u);
    EXPECT_EQ(e.expected(), 56u);
    EXPECT_STREQ(e.what(), "found 55 entries, expected 56");
  }
}

TEST(Catalog, ExpectedCountIsConfigurable) {
  EXPECT_EQ(parse_catalog(catalog_with(49), 49).size(), 49u);
}

TEST(Catalog, DuplicateNameIsRejected) {
  std::string text = catalog_with(56);
  auto at = text.find("Value 2,");
  text.replace(at, 7, "Value 1");
  EXPECT_THROW(parse_catalog(text), UniquenessError);
}

TEST(Catalog, DuplicateIdIsRejected) {
  std::string text = catalog_with(56);
  auto at = text.find("\n2,");
  text.replace(at + 1, 1, "1");
  EXPECT_THROW(parse_catalog(text), UniquenessError);
}

TEST(Catalog, RowsMayArriveOutOfOrder) {
  std::string text = "id,name,definition\n";
  for (int i = 56; i >= 1; --i) text += std::to_string(i) + ",V" + std::to_string(i) + ",d\n";
  auto catalog = parse_catalog(text);
  EXPECT_EQ(catalog.front().name, "V1");
  EXPECT_EQ(catalog.back().name, "V56");
}

TEST(Catalog, GapInIdsIsRejected) {
  std::string text = catalog_with(56);
  auto at = text.find("\n56,");
  text.replace(at + 1, 2, "57");
  EXPECT_THROW(parse_catalog(text), ParseError);
}

TEST(Catalog, BadHeaderAndEmptyFields) {
  EXPECT_THROW(parse_catalog("name,id,definition\n"), ParseError);
  EXPECT_THROW(parse_catalog(""), ParseError);
  std::string text = catalog_with(56);
  text.replace(text.find("definition 3"), 12, "");
  EXPECT_THROW(parse_catalog(text), ParseError);
}

TEST(Catalog, QuotedFieldsRoundTrip) {
  auto text = catalog_to_csv(default_catalog());
  EXPECT_EQ(parse_catalog(text), default_catalog());
}

TEST(Catalog, MotivationalTypesAreAttached) {
  Catalog catalog = default_catalog();
  apply_motivational_types(catalog, "name,motivational_type\nEquality,Universalism\n");
  EXPECT_EQ(catalog[0].motivational_type, "Universalism");
  EXPECT_FALSE(catalog[1].motivational_type.has_value());
  EXPECT_THROW(apply_motivational_types(catalog, "name,motivational_type\nNope,X\n"), ParseError);
}

}  // namespace
}  // namespace valuecompass
