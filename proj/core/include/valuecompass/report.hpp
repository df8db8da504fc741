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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valuecompass/catalog.hpp"
#include "valuecompass/metrics.hpp"

namespace valuecompass::report {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  std::string hex() const;
  static Rgb parse(std::string_view hex);  // "#rrggbb"
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Piecewise-linear color ramp over [0, 1] with evenly spaced stops.
struct ColorScale {
  enum class Kind { diverging, sequential };
  Kind kind = Kind::sequential;
  std::vector<Rgb> stops;

  /// Blue - white - red, centred on 0.5 (Disagree vs Agree poles).
  static ColorScale diverging_default();
  /// White to deep plum, for distances starting at 0.
  static ColorScale sequential_default();

  Rgb at(double value) const;
  /// "diverging:#3b4cc0:#f7f7f7:#b40426"
  std::string spec() const;
  static ColorScale parse(std::string_view spec);

  friend bool operator==(const ColorScale&, const ColorScale&) = default;
};

enum class Grouping { none, country, topic };
std::string_view grouping_name(Grouping grouping);

struct HeatmapData {
  std::string title;
  ColorScale scale;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Grid<Cell> values;  // quantized to 6 decimals

  friend bool operator==(const HeatmapData&, const HeatmapData&) = default;
};

/// Rows are the 28 contexts (Grouping::none) or per-scope column means.
HeatmapData make_heatmap(const Grid<Cell>& matrix, const Catalog& catalog, Grouping grouping,
                         std::string title, ColorScale scale);

std::string render_heatmap_svg(const HeatmapData& data);
std::string heatmap_csv(const HeatmapData& data);
HeatmapData parse_heatmap_csv(std::string_view text);

/// F1 rates by (model, scope).
struct RateTable {
  std::string title;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Grid<Cell> rates;  // quantized to 6 decimals

  static RateTable make(std::string title, std::vector<std::string> rows,
                        std::vector<std::string> cols, const Grid<Cell>& rates);
  friend bool operator==(const RateTable&, const RateTable&) = default;
};

/// Row averages over present cells and per-column extrema. Column
/// `col_labels.size()` is the Average column. Ties all receive the mark; a
/// single row is both best and worst everywhere.
struct RateTableMarks {
  std::vector<Cell> averages;
  Grid<char> best;
  Grid<char> worst;
};
RateTableMarks mark_rate_table(const RateTable& table);

std::string render_rate_table_svg(const RateTable& table);
std::string rate_table_csv(const RateTable& table);
RateTable parse_rate_table_csv(std::string_view text);

struct RankingBar {
  int value_id = 0;
  std::string name;
  Cell distance;
  std::optional<int> rank;
  friend bool operator==(const RankingBar&, const RankingBar&) = default;
};

struct RankingPanel {
  std::string title;
  std::vector<RankingBar> bars;
  friend bool operator==(const RankingPanel&, const RankingPanel&) = default;
};

/// One panel, or two stacked panels sharing the distance axis.
struct RankingChart {
  std::vector<RankingPanel> panels;
  friend bool operator==(const RankingChart&, const RankingChart&) = default;
};

RankingPanel make_ranking_panel(const RankedList& ranked, const Catalog& catalog, std::string title);
RankingChart make_ranking_chart(const RankingPanel& ranked,
                                const std::optional<RankingPanel>& reference = std::nullopt);

std::string render_ranking_svg(const RankingChart& chart);
std::string ranking_csv(const RankingChart& chart);
RankingChart parse_ranking_csv(std::string_view text);

struct Artifact {
  std::string path;  // relative to the run directory
  std::string content;
};

struct ReportBundle {
  std::string run_id;
  std::uint64_t seed = 0;
  std::vector<Artifact> artifacts;

  std::string manifest_json() const;
};

/// Writes `<root>/<run_id>/...` atomically, then manifest.json with SHA-256
/// hashes. Returns the run directory.
std::filesystem::path write_bundle(const std::filesystem::path& root, const ReportBundle& bundle);

/// Checks that every manifest entry exists and hashes match. Returns an
/// empty string on success, otherwise the first problem found.
std::string verify_manifest(const std::filesystem::path& run_dir);

/// Lower-case file-name slug: "United States" -> "united_states".
std::string slug(std::string_view text);

}  // namespace valuecompass::report
