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
#include "valuecompass/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "valuecompass/contexts.hpp"
#include "valuecompass/csv.hpp"
#include "valuecompass/error.hpp"
#include "valuecompass/io.hpp"

namespace valuecompass::report {

namespace fs = std::filesystem;

std::string Rgb::hex() const { return fmt::format("#{:02x}{:02x}{:02x}", r, g, b); }

Rgb Rgb::parse(std::string_view hex) {
  if (hex.size() != 7 || hex[0] != '#') throw ParseError("bad color '" + std::string(hex) + "'");
  auto byte = [&](std::size_t at) {
    unsigned value = 0;
    for (std::size_t i = at; i < at + 2; ++i) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[i])));
      value *= 16;
      if (c >= '0' && c <= '9') {
        value += static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        value += static_cast<unsigned>(c - 'a' + 10);
      } else {
        throw ParseError("bad color '" + std::string(hex) + "'");
      }
    }
    return static_cast<std::uint8_t>(value);
  };
  return Rgb{byte(1), byte(3), byte(5)};
}

ColorScale ColorScale::diverging_default() {
  return {Kind::diverging, {{59, 76, 192}, {247, 247, 247}, {180, 4, 38}}};
}

ColorScale ColorScale::sequential_default() {
  return {Kind::sequential, {{255, 255, 255}, {244, 198, 166}, {104, 16, 72}}};
}

Rgb ColorScale::at(double value) const {
  if (stops.empty()) return {};
  if (stops.size() == 1) return stops.front();
  value = std::clamp(value, 0.0, 1.0);
  double position = value * static_cast<double>(stops.size() - 1);
  auto lower = static_cast<std::size_t>(std::floor(position));
  if (lower >= stops.size() - 1) return stops.back();
  double t = position - static_cast<double>(lower);
  auto mix = [t](std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(std::lround(a + (b - a) * t));
  };
  const Rgb& a = stops[lower];
  const Rgb& b = stops[lower + 1];
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

std::string ColorScale::spec() const {
  std::string out = kind == Kind::diverging ? "diverging" : "sequential";
  for (const auto& stop : stops) out += ":" + stop.hex();
  return out;
}

ColorScale ColorScale::parse(std::string_view spec) {
  ColorScale scale;
  std::vector<std::string_view> parts;
  for (std::size_t start = 0;;) {
    auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.front() == "diverging") {
    scale.kind = Kind::diverging;
  } else if (parts.front() == "sequential") {
    scale.kind = Kind::sequential;
  } else {
    throw ParseError("unknown color scale '" + std::string(parts.front()) + "'");
  }
  for (std::size_t i = 1; i < parts.size(); ++i) scale.stops.push_back(Rgb::parse(parts[i]));
  if (scale.stops.size() < 2) throw ParseError("a color scale needs at least two stops");
  return scale;
}

std::string_view grouping_name(Grouping grouping) {
  switch (grouping) {
    case Grouping::country:
      return "country";
    case Grouping::topic:
      return "topic";
    case Grouping::none:
      break;
  }
  return "context";
}

std::string slug(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

Cell quantized(const Cell& value) { return value ? Cell(quantize6(*value)) : Cell{}; }

// Approximate advance of 11px sans-serif text.
int text_width(std::string_view text, double per_char = 6.2) {
  return static_cast<int>(std::ceil(static_cast<double>(text.size()) * per_char));
}

constexpr std::string_view kHatchDefs =
    "<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\">"
    "<rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>"
    "<path d=\"M0,6 L6,0\" stroke=\"#999999\" stroke-width=\"1\"/></pattern>";

std::string svg_open(int width, int height) {
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      width, height);
}

struct Metadata {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Splits a companion CSV into leading "# key,value" lines and the table.
std::pair<Metadata, std::vector<csv::Record>> split_companion(std::string_view text,
                                                              std::string_view expected_kind) {
  auto records = csv::parse(text);
  Metadata meta;
  std::vector<csv::Record> body;
  for (auto& record : records) {
    if (!record.fields.empty() && record.fields[0].starts_with("# ")) {
      std::string key = record.fields[0].substr(2);
      if (meta.kind.empty()) {
        meta.kind = key;
      } else {
        meta.entries.emplace_back(key, record.fields.size() > 1 ? record.fields[1] : "");
      }
    } else {
      body.push_back(std::move(record));
    }
  }
  if (meta.kind != expected_kind) {
    throw ParseError("expected a " + std::string(expected_kind) + " companion file");
  }
  return {std::move(meta), std::move(body)};
}

std::string meta_value(const Metadata& meta, std::string_view key) {
  for (const auto& [k, v] : meta.entries) {
    if (k == key) return v;
  }
  throw ParseError("companion file lacks '" + std::string(key) + "'");
}

}  // namespace

HeatmapData make_heatmap(const Grid<Cell>& matrix, const Catalog& catalog, Grouping grouping,
                         std::string title, ColorScale scale) {
  HeatmapData data;
  data.title = std::move(title);
  data.scale = std::move(scale);
  for (const auto& item : catalog) data.col_labels.push_back(item.name);

  std::vector<std::vector<Cell>> rows;
  if (grouping == Grouping::none) {
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      auto context = context_at(static_cast<int>(r + 1));
      data.row_labels.push_back(fmt::format("{} | {}", country_name(context.country),
                                            topic_name(context.topic)));
      rows.emplace_back(matrix.row(r).begin(), matrix.row(r).end());
    }
  } else {
    auto scopes = grouping == Grouping::country ? country_scopes() : topic_scopes();
    for (const auto& scope : scopes) {
      data.row_labels.push_back(scope.label());
      auto scope_row_ids = scope_rows(scope);
      rows.push_back(grouped_mean(matrix, scope_row_ids));
    }
  }
  data.values = Grid<Cell>(rows.size(), matrix.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) data.values(r, c) = quantized(rows[r][c]);
  }
  return data;
}

std::string render_heatmap_svg(const HeatmapData& data) {
  constexpr int kCell = 14;
  constexpr int kPad = 10;
  int label_width = 0;
  for (const auto& label : data.row_labels) label_width = std::max(label_width, text_width(label));
  int col_label_height = 0;
  for (const auto& label : data.col_labels) {
    col_label_height = std::max(col_label_height, text_width(label));
  }
  // Column labels run at -60 degrees.
  col_label_height = static_cast<int>(std::ceil(col_label_height * 0.87)) + 8;

  const int grid_x = kPad + label_width + 6;
  const int grid_y = kPad + 24 + col_label_height;
  const int cols = static_cast<int>(data.values.cols());
  const int rows = static_cast<int>(data.values.rows());
  const int legend_y = grid_y + rows * kCell + 16;
  const int width = std::max(grid_x + cols * kCell + kPad + 20, grid_x + 360);
  const int height = legend_y + 48;

  std::string svg = svg_open(width, height);
  svg += "<defs>";
  svg += kHatchDefs;
  svg += "<linearGradient id=\"ramp\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">";
  const auto& stops = data.scale.stops;
  for (std::size_t i = 0; i < stops.size(); ++i) {
    int offset = stops.size() > 1 ? static_cast<int>(i * 100 / (stops.size() - 1)) : 0;
    svg += fmt::format("<stop offset=\"{}%\" stop-color=\"{}\"/>", offset, stops[i].hex());
  }
  svg += "</linearGradient></defs>\n";
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"14\" font-weight=\"bold\">{}</text>\n",
                     kPad, kPad + 14, xml_escape(data.title));

  for (int c = 0; c < cols; ++c) {
    int x = grid_x + c * kCell + kCell / 2;
    svg += fmt::format(
        "<text class=\"col-label\" x=\"{0}\" y=\"{1}\" transform=\"rotate(-60 {0} {1})\">{2}</text>\n",
        x, grid_y - 4, xml_escape(data.col_labels[static_cast<std::size_t>(c)]));
  }
  for (int r = 0; r < rows; ++r) {
    svg += fmt::format(
        "<text class=\"row-label\" x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
        grid_x - 6, grid_y + r * kCell + kCell - 3,
        xml_escape(data.row_labels[static_cast<std::size_t>(r)]));
    for (int c = 0; c < cols; ++c) {
      const auto& value = data.values(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      std::string fill = value ? data.scale.at(*value).hex() : "url(#hatch)";
      svg += fmt::format(
          "<rect class=\"cell{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" "
          "stroke=\"#ffffff\" stroke-width=\"0.5\"><title>{} | {}: {}</title></rect>\n",
          value ? "" : " missing", grid_x + c * kCell, grid_y + r * kCell, kCell, kCell, fill,
          xml_escape(data.row_labels[static_cast<std::size_t>(r)]),
          xml_escape(data.col_labels[static_cast<std::size_t>(c)]), format_cell(value));
    }
  }

  svg += fmt::format("<g class=\"legend\">\n");
  svg += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"200\" height=\"12\" fill=\"url(#ramp)\" stroke=\"#333333\" "
      "stroke-width=\"0.5\"/>\n",
      grid_x, legend_y);
  svg += fmt::format("<text x=\"{}\" y=\"{}\">0.0</text>\n", grid_x, legend_y + 26);
  if (data.scale.kind == ColorScale::Kind::diverging) {
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">0.5</text>\n", grid_x + 100,
                       legend_y + 26);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">1.0</text>\n", grid_x + 200,
                     legend_y + 26);
  svg += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"url(#hatch)\" stroke=\"#333333\" "
      "stroke-width=\"0.5\"/>\n<text x=\"{}\" y=\"{}\">missing</text>\n",
      grid_x + 230, legend_y, grid_x + 248, legend_y + 10);
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string heatmap_csv(const HeatmapData& data) {
  std::string out = csv::format_row({"# heatmap"});
  out += csv::format_row({"# title", data.title});
  out += csv::format_row({"# scale", data.scale.spec()});
  csv::Row header{"label"};
  header.insert(header.end(), data.col_labels.begin(), data.col_labels.end());
  out += csv::format_row(header);
  for (std::size_t r = 0; r < data.values.rows(); ++r) {
    csv::Row row{data.row_labels[r]};
    for (std::size_t c = 0; c < data.values.cols(); ++c) row.push_back(format_cell(data.values(r, c)));
    out += csv::format_row(row);
  }
  return out;
}

HeatmapData parse_heatmap_csv(std::string_view text) {
  auto [meta, body] = split_companion(text, "heatmap");
  if (body.empty()) throw ParseError("heatmap companion has no header row");
  HeatmapData data;
  data.title = meta_value(meta, "title");
  data.scale = ColorScale::parse(meta_value(meta, "scale"));
  const auto& header = body.front().fields;
  data.col_labels.assign(header.begin() + 1, header.end());
  data.values = Grid<Cell>(body.size() - 1, data.col_labels.size());
  for (std::size_t r = 1; r < body.size(); ++r) {
    const auto& fields = body[r].fields;
    if (fields.size() != header.size()) throw ParseError("ragged heatmap row", body[r].line);
    data.row_labels.push_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) data.values(r - 1, c - 1) = parse_cell(fields[c]);
  }
  return data;
}

RateTable RateTable::make(std::string title, std::vector<std::string> rows,
                          std::vector<std::string> cols, const Grid<Cell>& rates) {
  if (rates.rows() != rows.size() || rates.cols() != cols.size()) {
    throw std::invalid_argument("rate table labels do not match the grid");
  }
  RateTable table{std::move(title), std::move(rows), std::move(cols),
                  Grid<Cell>(rates.rows(), rates.cols())};
  for (std::size_t r = 0; r < rates.rows(); ++r) {
    for (std::size_t c = 0; c < rates.cols(); ++c) table.rates(r, c) = quantized(rates(r, c));
  }
  return table;
}

RateTableMarks mark_rate_table(const RateTable& table) {
  const std::size_t rows = table.rates.rows();
  const std::size_t cols = table.rates.cols();
  RateTableMarks marks{std::vector<Cell>(rows), Grid<char>(rows, cols + 1, 0),
                       Grid<char>(rows, cols + 1, 0)};
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (const auto& v = table.rates(r, c)) {
        sum += *v;
        ++n;
      }
    }
    if (n > 0) marks.averages[r] = sum / static_cast<double>(n);
  }
  auto value_at = [&](std::size_t r, std::size_t c) -> Cell {
    return c < cols ? table.rates(r, c) : marks.averages[r];
  };
  for (std::size_t c = 0; c <= cols; ++c) {
    Cell best;
    Cell worst;
    for (std::size_t r = 0; r < rows; ++r) {
      if (auto v = value_at(r, c)) {
        if (!best || *v > *best) best = v;
        if (!worst || *v < *worst) worst = v;
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      auto v = value_at(r, c);
      if (v && best && *v == *best) marks.best(r, c) = 1;
      if (v && worst && *v == *worst) marks.worst(r, c) = 1;
    }
  }
  return marks;
}

std::string render_rate_table_svg(const RateTable& table) {
  constexpr int kRowHeight = 24;
  constexpr int kPad = 10;
  constexpr int kCellWidth = 84;
  auto marks = mark_rate_table(table);
  const std::size_t cols = table.col_labels.size();

  int label_width = text_width("Average");
  for (const auto& label : table.row_labels) label_width = std::max(label_width, text_width(label));
  label_width += 16;
  int cell_width = kCellWidth;
  for (const auto& label : table.col_labels) cell_width = std::max(cell_width, text_width(label) + 12);

  const int top = kPad + 28;
  const int width = kPad * 2 + label_width + static_cast<int>(cols + 1) * cell_width;
  const int height = top + kRowHeight * static_cast<int>(table.row_labels.size() + 1) + kPad + 20;

  std::string svg = svg_open(width, height);
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"14\" font-weight=\"bold\">{}</text>\n",
                     kPad, kPad + 14, xml_escape(table.title));
  auto col_x = [&](std::size_t c) { return kPad + label_width + static_cast<int>(c) * cell_width; };
  for (std::size_t c = 0; c <= cols; ++c) {
    std::string_view label = c < cols ? std::string_view(table.col_labels[c]) : "Average";
    svg += fmt::format(
        "<text class=\"col-header\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" "
        "font-weight=\"bold\">{}</text>\n",
        col_x(c) + cell_width / 2, top + 16, xml_escape(label));
  }
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    int y = top + kRowHeight * static_cast<int>(r + 1);
    svg += fmt::format("<text class=\"row-header\" x=\"{}\" y=\"{}\" font-weight=\"bold\">{}</text>\n",
                       kPad, y + 16, xml_escape(table.row_labels[r]));
    for (std::size_t c = 0; c <= cols; ++c) {
      Cell value = c < cols ? table.rates(r, c) : marks.averages[r];
      bool best = marks.best(r, c) != 0;
      bool worst = marks.worst(r, c) != 0;
      std::string cls = "rate";
      std::string fill = "#ffffff";
      std::string stroke = "#cccccc";
      std::string text_fill = "#000000";
      std::string weight = "normal";
      if (best) {
        cls += " best";
        fill = "#f4c6a6";
        weight = "bold";
      }
      if (worst) {
        cls += " worst";
        if (best) {
          stroke = "#681048";
        } else {
          fill = "#681048";
          text_fill = "#ffffff";
        }
      }
      svg += fmt::format(
          "<rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" "
          "stroke=\"{}\"/>\n",
          cls, col_x(c), y, cell_width, kRowHeight, fill, stroke);
      svg += fmt::format(
          "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"{}\" font-weight=\"{}\">{}</text>\n",
          col_x(c) + cell_width / 2, y + 16, text_fill, weight,
          value ? format_fixed(*value, 3) : std::string("n/a"));
    }
  }
  svg += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-size=\"9\" fill=\"#555555\">shaded: best (light) and worst "
      "(dark) per column</text>\n",
      kPad, height - 8);
  svg += "</svg>\n";
  return svg;
}

std::string rate_table_csv(const RateTable& table) {
  auto marks = mark_rate_table(table);
  std::string out = csv::format_row({"# rate_table"});
  out += csv::format_row({"# title", table.title});
  csv::Row header{"model"};
  header.insert(header.end(), table.col_labels.begin(), table.col_labels.end());
  header.push_back("Average");
  out += csv::format_row(header);
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    csv::Row row{table.row_labels[r]};
    for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
      row.push_back(format_cell(table.rates(r, c)));
    }
    row.push_back(format_cell(marks.averages[r]));
    out += csv::format_row(row);
  }
  return out;
}

RateTable parse_rate_table_csv(std::string_view text) {
  auto [meta, body] = split_companion(text, "rate_table");
  if (body.empty()) throw ParseError("rate table companion has no header row");
  const auto& header = body.front().fields;
  if (header.size() < 2 || header.back() != "Average") {
    throw ParseError("rate table header must end with Average", body.front().line);
  }
  RateTable table;
  table.title = meta_value(meta, "title");
  table.col_labels.assign(header.begin() + 1, header.end() - 1);
  table.rates = Grid<Cell>(body.size() - 1, table.col_labels.size());
  for (std::size_t r = 1; r < body.size(); ++r) {
    const auto& fields = body[r].fields;
    if (fields.size() != header.size()) throw ParseError("ragged rate row", body[r].line);
    table.row_labels.push_back(fields[0]);
    for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
      table.rates(r - 1, c) = parse_cell(fields[c + 1]);
    }
  }
  return table;
}

RankingPanel make_ranking_panel(const RankedList& ranked, const Catalog& catalog,
                                std::string title) {
  RankingPanel panel{std::move(title), {}};
  for (const auto& item : ranked.items) {
    std::string name = item.value_id >= 1 && static_cast<std::size_t>(item.value_id) <= catalog.size()
                           ? catalog[static_cast<std::size_t>(item.value_id - 1)].name
                           : "value " + std::to_string(item.value_id);
    panel.bars.push_back({item.value_id, std::move(name), quantized(item.distance), item.rank});
  }
  return panel;
}

RankingChart make_ranking_chart(const RankingPanel& ranked,
                                const std::optional<RankingPanel>& reference) {
  RankingChart chart{{ranked}};
  if (reference) chart.panels.push_back(*reference);
  return chart;
}

std::string render_ranking_svg(const RankingChart& chart) {
  constexpr int kBar = 12;
  constexpr int kGap = 3;
  constexpr int kPad = 10;
  constexpr int kAxisWidth = 360;

  double max_distance = 0.0;
  int label_width = 0;
  for (const auto& panel : chart.panels) {
    for (const auto& bar : panel.bars) {
      if (bar.distance) max_distance = std::max(max_distance, *bar.distance);
      label_width = std::max(label_width, text_width(bar.name) + 30);
    }
  }
  // Shared axis, rounded up to the next tenth.
  double axis_max = std::max(0.1, std::ceil(max_distance * 10.0 - 1e-9) / 10.0);

  const int bars_x = kPad + label_width + 8;
  const int width = bars_x + kAxisWidth + 70;
  int height = kPad;
  for (const auto& panel : chart.panels) {
    height += 48 + static_cast<int>(panel.bars.size()) * (kBar + kGap) + 24;
  }

  std::string svg = svg_open(width, height);
  svg += "<defs>";
  svg += kHatchDefs;
  svg += "</defs>\n";

  int y = kPad;
  for (std::size_t p = 0; p < chart.panels.size(); ++p) {
    const auto& panel = chart.panels[p];
    svg += fmt::format("<g class=\"panel\" id=\"panel{}\">\n", p + 1);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"14\" font-weight=\"bold\">{}</text>\n",
                       kPad, y + 16, xml_escape(panel.title));
    int axis_y = y + 30;
    for (int tick = 0; tick <= 5; ++tick) {
      int x = bars_x + kAxisWidth * tick / 5;
      svg += fmt::format(
          "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#dddddd\"/>"
          "<text x=\"{0}\" y=\"{3}\" text-anchor=\"middle\" font-size=\"9\">{4}</text>\n",
          x, axis_y + 4, axis_y + 8 + static_cast<int>(panel.bars.size()) * (kBar + kGap),
          axis_y, format_fixed(axis_max * tick / 5.0, 2));
    }
    int bar_y = axis_y + 8;
    for (const auto& bar : panel.bars) {
      std::string rank = bar.rank ? std::to_string(*bar.rank) + ". " : std::string("-- ");
      svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}{}</text>\n", bars_x - 6,
                         bar_y + kBar - 2, rank, xml_escape(bar.name));
      if (bar.distance) {
        int length = static_cast<int>(std::lround(*bar.distance / axis_max * kAxisWidth));
        svg += fmt::format(
            "<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\">"
            "<title>{}: {}</title></rect>\n",
            bars_x, bar_y, length, kBar, ColorScale::sequential_default().at(*bar.distance).hex(),
            xml_escape(bar.name), format_fixed(*bar.distance, 6));
        svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"9\">{}</text>\n",
                           bars_x + length + 4, bar_y + kBar - 2, format_fixed(*bar.distance, 3));
      } else {
        svg += fmt::format(
            "<rect class=\"bar missing\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
            "fill=\"url(#hatch)\" stroke=\"#999999\" stroke-width=\"0.5\"><title>{}: NA</title></rect>\n",
            bars_x, bar_y, kAxisWidth / 6, kBar, xml_escape(bar.name));
      }
      bar_y += kBar + kGap;
    }
    svg += "</g>\n";
    y = bar_y + 24;
  }
  svg += "</svg>\n";
  return svg;
}

std::string ranking_csv(const RankingChart& chart) {
  std::string out = csv::format_row({"# ranking"});
  for (const auto& panel : chart.panels) {
    out += csv::format_row({"# panel", panel.title});
    out += csv::format_row({"rank", "value_id", "value_name", "distance"});
    for (const auto& bar : panel.bars) {
      out += csv::format_row({bar.rank ? std::to_string(*bar.rank) : std::string(),
                              std::to_string(bar.value_id), bar.name, format_cell(bar.distance)});
    }
  }
  return out;
}

RankingChart parse_ranking_csv(std::string_view text) {
  auto records = csv::parse(text);
  if (records.empty() || records.front().fields.empty() || records.front().fields[0] != "# ranking") {
    throw ParseError("expected a ranking companion file");
  }
  RankingChart chart;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& fields = records[i].fields;
    if (fields[0] == "# panel") {
      chart.panels.push_back({fields.size() > 1 ? fields[1] : "", {}});
      continue;
    }
    if (fields[0] == "rank") continue;
    if (chart.panels.empty() || fields.size() != 4) {
      throw ParseError("malformed ranking row", records[i].line);
    }
    RankingBar bar;
    if (!fields[0].empty()) bar.rank = std::stoi(fields[0]);
    bar.value_id = std::stoi(fields[1]);
    bar.name = fields[2];
    bar.distance = parse_cell(fields[3]);
    chart.panels.back().bars.push_back(std::move(bar));
  }
  return chart;
}

std::string ReportBundle::manifest_json() const {
  std::vector<const Artifact*> sorted;
  for (const auto& artifact : artifacts) sorted.push_back(&artifact);
  std::ranges::sort(sorted, {}, &Artifact::path);

  nlohmann::ordered_json doc;
  doc["run_id"] = run_id;
  doc["seed"] = seed;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const Artifact* artifact : sorted) {
    list.push_back({{"path", artifact->path},
                    {"sha256", sha256_hex(artifact->content)},
                    {"bytes", artifact->content.size()}});
  }
  doc["artifacts"] = std::move(list);
  return doc.dump(2) + "\n";
}

fs::path write_bundle(const fs::path& root, const ReportBundle& bundle) {
  fs::path run_dir = root / bundle.run_id;
  for (const auto& artifact : bundle.artifacts) {
    write_file_atomic(run_dir / artifact.path, artifact.content);
  }
  write_file_atomic(run_dir / "manifest.json", bundle.manifest_json());
  return run_dir;
}

std::string verify_manifest(const fs::path& run_dir) {
  auto doc = nlohmann::json::parse(read_file(run_dir / "manifest.json"), nullptr, false);
  if (doc.is_discarded() || !doc.contains("artifacts")) return "manifest.json is malformed";
  for (const auto& entry : doc["artifacts"]) {
    auto path = run_dir / entry.value("path", std::string{});
    if (!fs::exists(path)) return "missing artifact " + path.string();
    if (sha256_hex(read_file(path)) != entry.value("sha256", std::string{})) {
      return "hash mismatch for " + path.string();
    }
  }
  return {};
}

}  // namespace valuecompass::report
