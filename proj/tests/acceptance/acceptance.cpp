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
// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.
#include <algorithm>
#include <array>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <chrono>
#include <cmath>
#include <fmt/core.h>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"
#include "published_rates.hpp"
#include "valuecompass/catalog.hpp"
#include "valuecompass/contexts.hpp"
#include "valuecompass/csv.hpp"
#include "valuecompass/gateway.hpp"
#include "valuecompass/io.hpp"
#include "valuecompass/metrics.hpp"
#include "valuecompass/prompts.hpp"
#include "valuecompass/report.hpp"
#include "valuecompass/survey.hpp"

namespace fs = std::filesystem;
using namespace valuecompass;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool contains(const std::string& text, std::string_view token) {
  return text.find(token) != std::string::npos;
}

// 1. Prompt completeness.
Outcome prompt_completeness() {
  auto start = std::chrono::steady_clock::now();
  PromptEngine engine;
  auto contexts = enumerate_contexts();
  const auto& catalog = default_catalog();
  auto batch = engine.batch(contexts, catalog);
  if (batch.size() != 28u * 56u * 8u) return fail(fmt::format("{} prompts", batch.size()));

  std::map<std::pair<int, int>, std::vector<const Prompt*>> cells;
  for (const auto& p : batch) cells[{p.context.index, p.value_id}].push_back(&p);

  std::mt19937 rng(1);
  std::uniform_int_distribution<int> context(1, 28);
  std::uniform_int_distribution<int> value(1, 56);
  for (int sample = 0; sample < 50; ++sample) {
    std::pair<int, int> key{context(rng), value(rng)};
    const auto& variants = cells[key];
    if (variants.size() != 8) return fail(fmt::format("cell {},{} has {} variants", key.first, key.second, variants.size()));
    std::set<std::string> texts;
    std::set<int> ids;
    const auto& item = catalog[static_cast<std::size_t>(key.second - 1)];
    auto ctx = context_at(key.first);
    for (const auto* p : variants) {
      texts.insert(p->text);
      ids.insert(p->variant.id());
      for (std::string_view token : {std::string_view(item.name), std::string_view(item.definition),
                                     country_name(ctx.country), topic_name(ctx.topic)}) {
        if (!contains(p->text, token)) {
          return fail(fmt::format("cell {},{} variant {} lacks '{}'", key.first, key.second,
                                  p->variant.id(), token));
        }
      }
    }
    if (texts.size() != 8 || ids.size() != 8) return fail(fmt::format("cell {},{} has repeated variants", key.first, key.second));
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 10.0) return fail(fmt::format("took {:.2f} s", elapsed));
  return {true, fmt::format("{} prompts, 50 sampled cells with 8 distinct variants ({:.2f} s)", batch.size(), elapsed)};
}

// 2. Metric oracle equivalence against brute-force loops.
std::vector<std::size_t> brute_rows(const Scope& scope) {
  std::vector<std::size_t> rows;
  for (int topic = 1; topic <= 4; ++topic) {
    for (int country = 1; country <= 7; ++country) {
      bool in = scope.kind() == Scope::Kind::all ||
                (scope.kind() == Scope::Kind::country && country_rank(scope.country()) == country) ||
                (scope.kind() == Scope::Kind::topic && topic_rank(scope.topic()) == topic);
      if (in) rows.push_back(static_cast<std::size_t>(7 * (topic - 1) + country - 1));
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

Outcome metric_oracle() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260417);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> eighth(0, 8);
  std::bernoulli_distribution coarse(0.4);
  std::bernoulli_distribution missing(0.06);

  auto random_matrix = [&] {
    Grid<Cell> m(28, 56);
    for (std::size_t r = 0; r < 28; ++r) {
      for (std::size_t c = 0; c < 56; ++c) {
        if (missing(rng)) continue;
        m(r, c) = coarse(rng) ? eighth(rng) / 8.0 : unit(rng);
      }
    }
    return m;
  };

  std::vector<Scope> scopes{Scope::all()};
  for (const auto& s : country_scopes()) scopes.push_back(s);
  for (const auto& s : topic_scopes()) scopes.push_back(s);

  std::size_t rate_checks = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto l = random_matrix();
    auto h = random_matrix();
    if (trial % 50 == 0) {
      // Degenerate pairs: everything agrees, or nothing overlaps.
      for (std::size_t r = 0; r < 28; ++r) {
        for (std::size_t c = 0; c < 56; ++c) {
          if (trial % 100 == 0) {
            if (l(r, c)) l(r, c) = 0.9;
            if (h(r, c)) h(r, c) = 0.9;
          } else if ((r + c) % 2 == 0) {
            l(r, c) = std::nullopt;
          } else {
            h(r, c) = std::nullopt;
          }
        }
      }
    }
    auto bl = binarize(l);
    auto bh = binarize(h);
    auto d = alignment_distance(l, h);

    for (std::size_t r = 0; r < 28; ++r) {
      for (std::size_t c = 0; c < 56; ++c) {
        bool both = l(r, c) && h(r, c);
        if (both != d(r, c).has_value()) return fail(fmt::format("trial {}: distance presence at {},{}", trial, r, c));
        if (both && std::abs(*d(r, c) - std::abs(*l(r, c) - *h(r, c))) > 1e-12) {
          return fail(fmt::format("trial {}: distance at {},{}", trial, r, c));
        }
      }
    }

    const Scope& scope = scopes[static_cast<std::size_t>(trial) % scopes.size()];
    for (const Scope* s : std::array<const Scope*, 2>{&scopes[0], &scope}) {
      auto rows = brute_rows(*s);
      std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
      for (auto r : rows) {
        for (std::size_t c = 0; c < 56; ++c) {
          if (!l(r, c) || !h(r, c)) continue;
          bool model_disagree = !(*l(r, c) > 0.5);
          bool human_disagree = !(*h(r, c) > 0.5);
          tp += model_disagree && human_disagree;
          fp += model_disagree && !human_disagree;
          fn += !model_disagree && human_disagree;
          tn += !model_disagree && !human_disagree;
        }
      }
      std::optional<double> f1;
      if (2 * tp + fp + fn > 0) f1 = 2.0 * tp / static_cast<double>(2 * tp + fp + fn);
      auto rate = alignment_rate(bl, bh, *s);
      if (rate.counts.tp != tp || rate.counts.fp != fp || rate.counts.fn != fn || rate.counts.tn != tn) {
        return fail(fmt::format("trial {}: confusion counts differ for {}", trial, s->label()));
      }
      if (rate.f1 != f1) return fail(fmt::format("trial {}: F1 differs for {}", trial, s->label()));
      ++rate_checks;

      auto grouped = grouped_distance(d, *s);
      for (std::size_t c = 0; c < 56; ++c) {
        double sum = 0;
        int n = 0;
        for (auto r : rows) {
          if (l(r, c) && h(r, c)) {
            sum += std::abs(*l(r, c) - *h(r, c));
            ++n;
          }
        }
        Cell expected = n > 0 ? Cell(sum / n) : std::nullopt;
        if (expected.has_value() != grouped[c].has_value() ||
            (expected && std::abs(*expected - *grouped[c]) > 1e-12)) {
          return fail(fmt::format("trial {}: grouped distance differs for {} value {}", trial, s->label(), c + 1));
        }
      }
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 60.0) return fail(fmt::format("took {:.2f} s", elapsed));
  return {true, fmt::format("1000 matrix pairs, {} scoped rate checks ({:.2f} s)", rate_checks, elapsed)};
}

// 3. Normalization and binarization.
Outcome normalization() {
  if (scale_to_unit(-2) != 0.0 || scale_to_unit(0) != 0.5 || scale_to_unit(2) != 1.0) {
    return fail("scale_to_unit endpoints");
  }
  const double below = std::nextafter(0.5, 0.0);
  const double above = std::nextafter(0.5, 1.0);
  // Smallest step that moves 0.5 in both directions: the spacing above 0.5.
  for (double eps : {above - 0.5, 1e-9, 1e-6}) {
    if (binarize_score(0.5 - eps) != Inclination::disagree) return fail(fmt::format("0.5 - {} not Disagree", eps));
    if (binarize_score(0.5 + eps) != Inclination::agree) return fail(fmt::format("0.5 + {} not Agree", eps));
  }
  if (binarize_score(0.5) != Inclination::disagree) return fail("0.5 not Disagree");
  if (binarize_score(above) != Inclination::agree || binarize_score(below) != Inclination::disagree) {
    return fail("adjacent doubles");
  }
  Grid<Cell> m(1, 2);
  m(0, 0) = 0.5;
  auto b = binarize(m);
  if (b(0, 0) != Inclination::disagree || b(0, 1).has_value()) return fail("binarize grid");
  return {true, "{-2,0,2} -> {0,0.5,1}; 0.5-e and 0.5 Disagree, 0.5+e Agree"};
}

// 4. Published best-row average.
Outcome published_average() {
  auto table = testing::published_rate_table(1);
  auto marks = report::mark_rate_table(table);
  if (!marks.averages[0]) return fail("average missing");
  double average = *marks.averages[0];
  auto csv = report::rate_table_csv(table);
  auto svg = report::render_rate_table_svg(table);
  if (std::abs(average - 0.529) > 0.001) return fail(fmt::format("average {:.6f}", average));
  if (!contains(svg, ">0.529<")) return fail("rendered table lacks 0.529");
  if (!contains(csv, format_fixed(average, 6))) return fail("CSV lacks the average");
  return {true, fmt::format("Deepseek-r1 row average {:.6f}, rendered 0.529", average)};
}

// 5. End-to-end determinism.
struct PipelineRun {
  int code = 0;
  std::string step;
  std::string err;
};

PipelineRun run_pipeline(const fs::path& out) {
  fs::path survey = testing::fixture("survey_112.csv");
  std::vector<std::vector<std::string>> steps{
      {"prompts"},
      {"--seed", "42", "eval", "--mock"},
      {"--survey", survey.string(), "score"},
      {"report"},
  };
  for (auto step : steps) {
    std::vector<std::string> args{"valuecompass", "--output-dir", out.string()};
    args.insert(args.end(), step.begin(), step.end());
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream sink;
    std::ostringstream err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), sink, err);
    if (code != 0) return {code, step.back(), err.str()};
  }
  return {};
}

std::map<std::string, std::string> tree_contents(const fs::path& root) {
  std::map<std::string, std::string> files;
  if (!fs::exists(root)) return files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) files[fs::relative(entry.path(), root).string()] = read_file(entry.path());
  }
  return files;
}

fs::path report_dir(const fs::path& out) {
  for (const auto& entry : fs::directory_iterator(out / "reports")) {
    if (entry.is_directory()) return entry.path();
  }
  return {};
}

Outcome determinism(const testing::TempDir& a, const testing::TempDir& b) {
  auto start = std::chrono::steady_clock::now();
  for (const auto* dir : {&a, &b}) {
    auto run = run_pipeline(dir->path());
    if (run.code != 0) return fail(fmt::format("{} exited {}: {}", run.step, run.code, run.err));
  }
  double elapsed = seconds_since(start);
  if (read_file(a / "records/mock.jsonl") != read_file(b / "records/mock.jsonl")) return fail("records differ");
  auto scores_a = tree_contents(a / "scores");
  auto scores_b = tree_contents(b / "scores");
  if (scores_a.empty() || scores_a != scores_b) return fail("score outputs differ");
  auto report_a = report_dir(a.path());
  auto report_b = report_dir(b.path());
  if (report_a.empty() || report_a.filename() != report_b.filename()) return fail("report run ids differ");
  auto manifest_a = read_file(report_a / "manifest.json");
  if (manifest_a != read_file(report_b / "manifest.json")) return fail("report manifests differ");
  if (!report::verify_manifest(report_a).empty()) return fail(report::verify_manifest(report_a));
  if (elapsed >= 120.0) return fail(fmt::format("took {:.2f} s", elapsed));
  auto artifacts = nlohmann::json::parse(manifest_a)["artifacts"].size();
  return {true, fmt::format("two seed-42 runs identical: {} score files, {} report artifacts ({:.1f} s)",
                            scores_a.size(), artifacts, elapsed)};
}

// 6. Parser robustness.
Outcome parser_robustness() {
  std::ifstream in(testing::fixture("parse_corpus.jsonl"));
  if (!in) return fail("corpus not found");
  std::string line;
  int cases = 0;
  int malformed = 0;
  while (std::getline(in, line)) {
    auto entry = nlohmann::json::parse(line);
    const auto& e = entry["expected"];
    Answer expected = e.is_number_integer() ? Answer::numeric(e.get<int>())
                      : e == "irrelevant"   ? Answer::irrelevant()
                                            : Answer::missing();
    Answer actual = Answer::missing();
    try {
      actual = parse_score(entry["completion"].get<std::string>(),
                           OptionMap::by_name(entry["scale"].get<std::string>()),
                           entry["value_name"].get<std::string>());
    } catch (const std::exception& ex) {
      return fail(fmt::format("case {} threw: {}", entry["id"].dump(), ex.what()));
    }
    if (actual != expected) return fail(fmt::format("case {} resolved differently", entry["id"].dump()));
    ++cases;
    if (entry["rung"] != "json") ++malformed;
  }
  if (malformed < 20) return fail(fmt::format("only {} malformed cases", malformed));
  return {true, fmt::format("{} cases ({} malformed or refusals), no crashes", cases, malformed)};
}

// 7. Ingest filtering.
Outcome ingest_filtering() {
  auto text = read_file(testing::fixture("survey_112.csv"));
  auto result = ingest_survey(text, default_catalog());
  const auto& r = result.report;
  if (r.total_rows != 112 || r.accepted != 104 || r.rejected_attention != 8 || r.rejected_malformed != 0) {
    return fail(fmt::format("total {} accepted {} attention {} malformed {}", r.total_rows, r.accepted,
                            r.rejected_attention, r.rejected_malformed));
  }
  if (!r.reconciles()) return fail("report does not reconcile");

  // Independent per-context count straight from the CSV.
  auto records = csv::parse(text);
  const auto& header = records.front().fields;
  auto column = [&](std::string_view name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  std::map<int, std::size_t> expected;
  std::size_t total = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    bool passes = f[column("attn1")] == f[column("attn1_expected")] &&
                  f[column("attn2")] == f[column("attn2_expected")];
    auto country = country_from_name(f[column("country")]);
    auto topic = topic_from_name(f[column("topic")]);
    if (!country || !topic) return fail("fixture row with unknown scope");
    if (passes) ++expected[context_index(*country, *topic)];
    ++total;
  }
  std::size_t sum = 0;
  for (const auto& [context, count] : r.accepted_per_context) sum += count;
  if (total != 112 || sum != r.accepted || r.accepted_per_context != expected) {
    return fail("per-context counts do not reconcile");
  }
  if (result.kept.size() != 104 || result.dropped.size() != 8) return fail("kept/dropped sizes");
  return {true, fmt::format("112 rows: 104 accepted, 8 failed attention; {} contexts reconcile",
                            r.accepted_per_context.size())};
}

// 8. Report validity, over the bundle written by criterion 5.
namespace pt = boost::property_tree;

std::size_t count_class(const pt::ptree& node, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& [key, child] : node) {
    if (key == "<xmlattr>") continue;
    if (key == "rect") {
      auto cls = child.get<std::string>("<xmlattr>.class", "");
      n += cls == prefix || cls.rfind(prefix + " ", 0) == 0;
    }
    n += count_class(child, prefix);
  }
  return n;
}

Outcome report_validity(const testing::TempDir& run) {
  if (!fs::exists(run / "reports")) return fail("no report bundle");
  auto dir = report_dir(run.path());
  if (dir.empty()) return fail("no report run directory");
  std::size_t svgs = 0;
  std::size_t heatmaps = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.path().extension() != ".svg") continue;
    ++svgs;
    auto svg = read_file(entry.path());
    pt::ptree tree;
    try {
      std::istringstream in(svg);
      pt::read_xml(in, tree);
    } catch (const std::exception& ex) {
      return fail(fmt::format("{} is not well-formed: {}", entry.path().filename().string(), ex.what()));
    }
    if (contains(svg, "href=\"http") || contains(svg, "<image")) return fail(entry.path().string() + " is not self-contained");

    auto companion = entry.path();
    companion.replace_extension(".csv");
    if (!fs::exists(companion)) return fail("no companion for " + entry.path().filename().string());
    auto csv = read_file(companion);
    std::string rerendered;
    if (csv.rfind("# heatmap", 0) == 0) {
      auto data = report::parse_heatmap_csv(csv);
      std::size_t cells = count_class(tree, "cell");
      if (cells != data.values.rows() * data.values.cols()) {
        return fail(fmt::format("{}: {} cells for a {}x{} matrix", entry.path().filename().string(), cells,
                                data.values.rows(), data.values.cols()));
      }
      rerendered = report::render_heatmap_svg(data);
      ++heatmaps;
    } else if (csv.rfind("# rate_table", 0) == 0) {
      rerendered = report::render_rate_table_svg(report::parse_rate_table_csv(csv));
    } else if (csv.rfind("# ranking", 0) == 0) {
      rerendered = report::render_ranking_svg(report::parse_ranking_csv(csv));
    } else {
      return fail("unrecognized companion " + companion.filename().string());
    }
    if (rerendered != svg) return fail(entry.path().filename().string() + " does not round-trip");
  }
  if (heatmaps < 3) return fail(fmt::format("only {} heatmaps", heatmaps));
  return {true, fmt::format("{} SVGs well-formed and round-trip; {} heatmaps with matching cell counts", svgs, heatmaps)};
}

}  // namespace

int main() {
  testing::TempDir run_a;
  testing::TempDir run_b;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"prompt completeness", prompt_completeness},
      {"metric oracle equivalence", metric_oracle},
      {"normalization and binarization", normalization},
      {"rate table average", published_average},
      {"end-to-end determinism", [&] { return determinism(run_a, run_b); }},
      {"parser robustness", parser_robustness},
      {"ingest filtering", ingest_filtering},
      {"report validity", [&] { return report_validity(run_a); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& ex) {
      outcome = fail(std::string("exception: ") + ex.what());
    }
    failures += !outcome.pass;
    fmt::print("{} {} {}: {}\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, outcome.detail);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
