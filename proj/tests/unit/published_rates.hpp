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
#include <string>
#include <vector>

#include "valuecompass/report.hpp"

namespace valuecompass::testing {

// Alignment rates printed for five models across seven countries, with the
// printed row averages and shading (b = best, w = worst).
inline const std::vector<std::string> kPublishedCountries{
    "USA", "United Kingdom", "Canada", "Germany", "Australia", "India", "France"};

struct PublishedRateRow {
  std::string model;
  std::array<double, 7> rates;
  double average;
  std::string shading;  // 8 chars incl. Average; '.', 'b' or 'w'
};

inline const std::vector<PublishedRateRow> kPublishedRates{
    {"Deepseek-r1", {0.504, 0.543, 0.468, 0.685, 0.624, 0.255, 0.624}, 0.529, "b.wbb.bb"},
    {"OpenAI o3-mini", {0.351, 0.646, 0.558, 0.611, 0.552, 0.345, 0.495}, 0.508, "w....b.."},
    {"GPT-4o-mini", {0.367, 0.482, 0.538, 0.409, 0.420, 0.235, 0.386}, 0.405, ".w.wwwww"},
    {"Llama3-70B", {0.403, 0.654, 0.523, 0.507, 0.448, 0.304, 0.408}, 0.464, ".b......"},
    {"Gemma2-9b", {0.451, 0.612, 0.649, 0.590, 0.508, 0.303, 0.499}, 0.516, "..b....."},
};

inline report::RateTable published_rate_table(std::size_t rows = 5) {
  std::vector<std::string> models;
  Grid<Cell> rates(rows, 7);
  for (std::size_t r = 0; r < rows; ++r) {
    models.push_back(kPublishedRates[r].model);
    for (std::size_t c = 0; c < 7; ++c) rates(r, c) = kPublishedRates[r].rates[c];
  }
  return report::RateTable::make("Alignment rates by country", models, kPublishedCountries, rates);
}

}  // namespace valuecompass::testing
