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

#include "valuecompass/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

#include "valuecompass/csv.hpp"
#include "valuecompass/error.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass {
namespace {

// Two-column appendix table, read left column first (ids 1-28), then right.
constexpr std::string_view kDefaultCatalogCsv = R"csv(id,name,definition
1,Equality,equal opportunity for all
2,Inner Harmony,at peace with myself
3,Social Power,"control over others, dominance"
4,Pleasure,gratification of desires
5,Freedom,freedom of action and thought
6,A Spiritual Life,emphasis on spiritual not material matters
7,Sense of Belonging,feeling that others care about me
8,Social Order,stability of society
9,An Exciting Life,stimulating experience
10,Meaning in Life,a purpose in life
11,Politeness,"courtesy, good manners"
12,Wealth,"material possessions, money"
13,National Security,protection of my nation from enemies
14,Self-Respect,belief in one's own worth
15,Reciprocation of Favors,avoidance of indebtedness
16,Creativity,"uniqueness, imagination"
17,A World at Peace,free of war and conflict
18,Respect for Tradition,preservation of time-honored customs
19,Mature Love,deep emotional and spiritual intimacy
20,Self-Discipline,"self-restraint, resistance to temptation"
21,Detachment,from worldly concerns
22,Family Security,safety for loved ones
23,Social Recognition,"respect, approval by others"
24,Unity With Nature,fitting into nature
25,A Varied Life,"filled with challenge, novelty, and change"
26,Wisdom,a mature understanding of life
27,Authority,the right to lead or command
28,True Friendship,"close, supportive friends"
29,A World of Beauty,beauty of nature and the arts
30,Social Justice,"correcting injustice, care for the weak"
31,Independent,"self-reliant, self-sufficient"
32,Moderate,avoiding extremes of feeling and action
33,Loyal,"faithful to my friends, group"
34,Ambitious,"hardworking, aspiring"
35,Broad-Minded,tolerant of different ideas and beliefs
36,Humble,"modest, self-effacing"
37,Daring,"seeking adventure, risk"
38,Protecting the Environment,preserving nature
39,Influential,having an impact on people and events
40,Honoring of Parents and Elders,showing respect
41,Choosing Own Goals,selecting own purposes
42,Healthy,not being sick physically or mentally
43,Capable,"competent, effective, efficient"
44,Accepting my Portion in Life,submitting to life's circumstances
45,Honest,"genuine, sincere"
46,Preserving my Public Image,protecting my 'face'
47,Obedient,"dutiful, meeting obligations"
48,Intelligent,"logical, thinking"
49,Helpful,working for the welfare of others
50,Enjoying Life,"enjoying food, sex, leisure, etc."
51,Devout,holding to religious faith and belief
52,Responsible,"dependable, reliable"
53,Curious,"interested in everything, exploring"
54,Forgiving,willing to pardon others
55,Successful,achieving goals
56,Clean,"neat, tidy"
)csv";

int parse_id(std::string_view text, std::size_t line) {
  text = trim(text);
  int id = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
  if (ec != std::errc{} || ptr != text.data() + text.size() || id < 1) {
    throw ParseError("invalid id '" + std::string(text) + "'", line);
  }
  return id;
}

}  // namespace

Catalog parse_catalog(std::string_view csv_text, std::size_t expected_count) {
  auto records = csv::parse(csv_text);
  if (records.empty()) throw ParseError("empty catalog file");

  const auto& header = records.front();
  std::vector<std::string> columns;
  for (const auto& field : header.fields) columns.push_back(to_lower(trim(field)));
  bool has_type = columns.size() == 4 && columns[3] == "motivational_type";
  if (columns.size() < 3 || columns[0] != "id" || columns[1] != "name" ||
      columns[2] != "definition" || (columns.size() == 4 && !has_type) ||
      columns.size() > 4) {
    throw ParseError("expected header id,name,definition[,motivational_type]", header.line);
  }

  Catalog items;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != columns.size()) {
      throw ParseError("expected " + std::to_string(columns.size()) + " fields, found " +
                           std::to_string(rec.fields.size()),
                       rec.line);
    }
    ValueItem item;
    item.id = parse_id(rec.fields[0], rec.line);
    item.name = std::string(trim(rec.fields[1]));
    item.definition = std::string(trim(rec.fields[2]));
    if (item.name.empty()) throw ParseError("empty value name", rec.line);
    if (item.definition.empty()) throw ParseError("empty definition for " + item.name, rec.line);
    if (has_type && !trim(rec.fields[3]).empty()) {
      item.motivational_type = std::string(trim(rec.fields[3]));
    }
    items.push_back(std::move(item));
  }

  if (items.size() != expected_count) throw CardinalityError(items.size(), expected_count);

  std::set<std::string> names;
  for (const auto& item : items) {
    if (!names.insert(item.name).second) {
      throw UniquenessError("duplicate value name '" + item.name + "'");
    }
  }
  std::ranges::sort(items, {}, &ValueItem::id);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0 && items[i].id == items[i - 1].id) {
      throw UniquenessError("duplicate value id " + std::to_string(items[i].id));
    }
    if (items[i].id != static_cast<int>(i + 1)) {
      throw ParseError("value ids must be contiguous from 1; missing id " + std::to_string(i + 1));
    }
  }
  return items;
}

Catalog load_catalog(const std::filesystem::path& path, std::size_t expected_count) {
  return parse_catalog(read_file(path), expected_count);
}

const Catalog& default_catalog() {
  static const Catalog catalog = parse_catalog(kDefaultCatalogCsv);
  return catalog;
}

std::string_view default_catalog_csv() { return kDefaultCatalogCsv; }

std::string catalog_to_csv(const Catalog& catalog) {
  bool with_type = std::ranges::any_of(
      catalog, [](const ValueItem& item) { return item.motivational_type.has_value(); });
  std::string out = with_type ? "id,name,definition,motivational_type\n" : "id,name,definition\n";
  for (const auto& item : catalog) {
    csv::Row row{std::to_string(item.id), item.name, item.definition};
    if (with_type) row.push_back(item.motivational_type.value_or(""));
    out += csv::format_row(row);
  }
  return out;
}

void apply_motivational_types(Catalog& catalog, std::string_view mapping_csv) {
  auto records = csv::parse(mapping_csv);
  if (records.empty()) return;
  std::unordered_map<std::string, ValueItem*> by_name;
  for (auto& item : catalog) by_name[item.name] = &item;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != 2) throw ParseError("expected name,motivational_type", rec.line);
    auto it = by_name.find(std::string(trim(rec.fields[0])));
    if (it == by_name.end()) {
      throw ParseError("unknown value '" + rec.fields[0] + "'", rec.line);
    }
    auto type = trim(rec.fields[1]);
    if (!type.empty()) it->second->motivational_type = std::string(type);
  }
}

}  // namespace valuecompass
