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
#include "valuecompass/commands.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "valuecompass/catalog.hpp"
#include "valuecompass/contexts.hpp"
#include "valuecompass/csv.hpp"
#include "valuecompass/error.hpp"
#include "valuecompass/gateway.hpp"
#include "valuecompass/io.hpp"
#include "valuecompass/matrix_io.hpp"
#include "valuecompass/metrics.hpp"
#include "valuecompass/prompts.hpp"
#include "valuecompass/survey.hpp"

namespace valuecompass {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

report::Grouping grouping_from_name(std::string_view name) {
  if (name == "country") return report::Grouping::country;
  if (name == "topic") return report::Grouping::topic;
  throw ConfigError("unknown grouping '" + std::string(name) + "' (expected country or topic)");
}

std::vector<Scope> scopes_for(report::Grouping grouping) {
  return grouping == report::Grouping::country ? country_scopes() : topic_scopes();
}

bool is_within(const fs::path& root, const fs::path& candidate) {
  auto base = fs::weakly_canonical(root);
  auto target = fs::weakly_canonical(candidate);
  auto [root_end, unused] = std::mismatch(base.begin(), base.end(), target.begin(), target.end());
  return root_end == base.end();
}

void require_file(const fs::path& path, std::string_view what) {
  if (!fs::is_regular_file(path)) {
    throw ConfigError(fmt::format("missing input: {} ({})", path.string(), what));
  }
}

Catalog load_catalog_for(const RunConfig& config) {
  if (!config.catalog) return default_catalog();
  require_file(*config.catalog, "catalog");
  return load_catalog(*config.catalog);
}

Vignettes load_vignettes_for(const RunConfig& config) {
  if (!config.vignettes) return Vignettes::defaults();
  require_file(*config.vignettes, "vignettes");
  return Vignettes::load(*config.vignettes);
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

ordered_json file_entry(const std::string& name, const std::string& content) {
  return {{"path", name}, {"sha256", sha256_hex(content)}, {"bytes", content.size()}};
}

/// Collects outputs keyed by relative path; commit() writes them in path order.
class OutputSet {
 public:
  explicit OutputSet(fs::path root) : root_(std::move(root)) {}

  void add(std::string relative, std::string content) {
    files_.emplace(std::move(relative), std::move(content));
  }

  ordered_json commit() const {
    ordered_json entries = ordered_json::array();
    for (const auto& [name, content] : files_) {
      write_file_atomic(root_ / name, content);
      entries.push_back(file_entry(name, content));
    }
    return entries;
  }

 private:
  fs::path root_;
  std::map<std::string, std::string> files_;
};

std::string model_label(const fs::path& records_path) { return records_path.stem().string(); }

}  // namespace

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const CredentialError*>(&error) != nullptr) return kExitCredential;
  return kExitInput;
}

RunConfig RunConfig::parse(std::string_view json_text, const fs::path& base_dir) {
  auto doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ConfigError("run config must be a JSON object");
  if (!doc.contains("version")) throw ConfigError("run config lacks \"version\"");
  static const std::vector<std::string> known{
      "version", "catalog", "vignettes", "models",   "survey",      "scale",
      "output_dir", "seed", "groupings", "macro_f1", "min_numeric", "run_id"};
  for (const auto& [key, unused] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown run config key '" + key + "'");
    }
  }
  auto resolve = [&](const std::string& text) {
    fs::path path(text);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };

  RunConfig config;
  try {
    if (doc.at("version").get<int>() != kVersion) {
      throw ConfigError("unsupported run config version " + doc.at("version").dump());
    }
    if (doc.contains("catalog")) config.catalog = resolve(doc["catalog"].get<std::string>());
    if (doc.contains("vignettes")) config.vignettes = resolve(doc["vignettes"].get<std::string>());
    if (doc.contains("models")) {
      for (const auto& entry : doc["models"]) {
        config.model_configs.push_back(resolve(entry.get<std::string>()));
      }
    }
    if (doc.contains("survey")) config.survey = resolve(doc["survey"].get<std::string>());
    if (doc.contains("scale")) config.scale = doc["scale"].get<std::string>();
    if (doc.contains("output_dir")) config.output_dir = resolve(doc["output_dir"].get<std::string>());
    if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("groupings")) {
      config.groupings.clear();
      for (const auto& entry : doc["groupings"]) {
        config.groupings.push_back(grouping_from_name(entry.get<std::string>()));
      }
    }
    if (doc.contains("macro_f1")) config.macro_f1 = doc["macro_f1"].get<bool>();
    if (doc.contains("min_numeric")) config.min_numeric = doc["min_numeric"].get<int>();
    if (doc.contains("run_id")) config.run_id = doc["run_id"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  OptionMap::by_name(config.scale);
  if (config.min_numeric < 1 || config.min_numeric > static_cast<int>(kVariantCount)) {
    throw ConfigError("min_numeric must be between 1 and 8");
  }
  if (config.run_id && (config.run_id->empty() || config.run_id->front() == '.' ||
                        config.run_id->find_first_of("/\\") != std::string::npos)) {
    throw ConfigError("run_id must be a plain directory name");
  }
  return config;
}

RunConfig RunConfig::load(const fs::path& path) {
  require_file(path, "run config");
  return parse(read_file(path), path.parent_path());
}

std::string RunConfig::to_json() const {
  ordered_json doc;
  doc["version"] = kVersion;
  if (catalog) doc["catalog"] = catalog->string();
  if (vignettes) doc["vignettes"] = vignettes->string();
  doc["models"] = ordered_json::array();
  for (const auto& path : model_configs) doc["models"].push_back(path.string());
  if (survey) doc["survey"] = survey->string();
  doc["scale"] = scale;
  doc["output_dir"] = output_dir.string();
  doc["seed"] = seed;
  doc["groupings"] = ordered_json::array();
  for (auto grouping : groupings) doc["groupings"].push_back(report::grouping_name(grouping));
  doc["macro_f1"] = macro_f1;
  doc["min_numeric"] = min_numeric;
  if (run_id) doc["run_id"] = *run_id;
  return doc.dump(2) + "\n";
}

fs::path RunConfig::output_path(const fs::path& path) const {
  fs::path resolved = path.is_absolute() ? path : output_dir / path;
  if (!is_within(output_dir, resolved)) {
    throw ConfigError("output path " + path.string() + " lies outside the output directory " +
                      output_dir.string());
  }
  return resolved;
}

int cmd_prompts(const RunConfig& config, const PromptsOptions& options, std::ostream& out) {
  auto catalog = load_catalog_for(config);
  PromptEngine engine(load_vignettes_for(config), OptionMap::by_name(config.scale));
  auto contexts = options.contexts ? group_contexts(*options.contexts) : enumerate_contexts();
  auto batch = engine.batch(contexts, catalog);

  auto path = config.output_path(options.out.value_or("prompts.jsonl"));
  std::ostringstream lines;
  write_prompt_batch(lines, batch);
  write_file_atomic(path, lines.str());

  ordered_json summary;
  summary["prompts"] = batch.size();
  summary["scale"] = config.scale;
  summary["values"] = catalog.size();
  summary["variants"] = kVariantCount;
  summary["contexts"] = ordered_json::array();
  for (const auto& context : contexts) {
    summary["contexts"].push_back({{"context_index", context.index},
                                   {"country", country_name(context.country)},
                                   {"topic", topic_name(context.topic)},
                                   {"prompts", catalog.size() * kVariantCount}});
  }
  fs::path summary_path = path;
  summary_path.replace_extension(".summary.json");
  write_file_atomic(summary_path, summary.dump(2) + "\n");

  out << fmt::format("wrote {} prompts for {} contexts to {}\n", batch.size(), contexts.size(),
                     path.string());
  return kExitOk;
}

int cmd_eval(const RunConfig& config, const EvalOptions& options, std::ostream& out) {
  fs::path prompts_path = options.prompts.value_or(config.output_path("prompts.jsonl"));
  require_file(prompts_path, "prompt batch");

  ModelConfig model;
  if (options.model_config) {
    require_file(*options.model_config, "model config");
    model = ModelConfig::load(*options.model_config);
  } else if (!config.model_configs.empty()) {
    require_file(config.model_configs.front(), "model config");
    model = ModelConfig::load(config.model_configs.front());
  } else if (options.mock) {
    model.model_id = "mock";
  } else {
    throw ConfigError("no model config given; pass --model-config or --mock");
  }
  model.validate();
  if (options.stability && *options.stability < 2) {
    throw ConfigError("--stability needs at least 2 repeats");
  }

  fs::path records_path = config.output_path(
      options.out.value_or(fs::path("records") / (report::slug(model.model_id) + ".jsonl")));
  auto batch = read_prompt_batch(prompts_path);

  // Credentials are resolved here, before any request.
  std::unique_ptr<ModelBackend> backend;
  if (options.mock) {
    backend = std::make_unique<MockBackend>(config.seed);
  } else {
    backend = std::make_unique<HttpBackend>(model);
  }

  EvaluationOptions eval;
  eval.checkpoint = records_path;
  eval.resume = options.resume;
  std::size_t next_report = 0;
  eval.progress = [&](std::size_t done, std::size_t total, std::size_t missing) {
    if (done * 10 >= next_report * total) {
      spdlog::info("{}/{} prompts answered, {} missing", done, total, missing);
      next_report = done * 10 / std::max<std::size_t>(total, 1) + 1;
    }
  };

  std::string started = utc_timestamp();
  auto result = run_evaluation(model, batch, *backend, eval);
  std::string finished = utc_timestamp();

  std::map<std::string, std::size_t> failures;
  std::size_t irrelevant = 0;
  for (const auto& record : result.records) {
    if (!record.failure_reason.empty()) ++failures[record.failure_reason];
    if (record.raw_score.is_irrelevant()) ++irrelevant;
  }
  ordered_json manifest;
  manifest["model_id"] = model.model_id;
  manifest["backend"] = options.mock ? "mock" : "http";
  if (!options.mock) manifest["endpoint_url"] = model.endpoint_url;
  manifest["temperature"] = model.temperature;
  manifest["seed"] = config.seed;
  manifest["prompts"] = {{"path", prompts_path.filename().string()},
                         {"sha256", sha256_hex(read_file(prompts_path))},
                         {"count", batch.size()}};
  manifest["records"] = result.records.size();
  manifest["requests_issued"] = result.requests_issued;
  manifest["resumed"] = result.resumed;
  manifest["missing"] = result.missing;
  manifest["irrelevant"] = irrelevant;
  manifest["failures"] = failures;
  manifest["complete"] = result.complete;
  manifest["degraded"] = result.degraded;
  manifest["started_at"] = started;
  manifest["finished_at"] = finished;
  if (result.complete) manifest["records_sha256"] = sha256_hex(read_file(records_path));
  fs::path manifest_path = records_path;
  manifest_path.replace_extension(".manifest.json");
  write_file_atomic(manifest_path, manifest.dump(2) + "\n");

  if (options.stability && result.complete) {
    auto stability = stability_probe(model, batch, *backend, *options.stability);
    fs::path stability_path = records_path;
    stability_path.replace_extension(".stability.json");
    write_file_atomic(stability_path, stability.to_json());
    out << fmt::format("stability over {} repeats: mean variance {}, max variance {}\n",
                       stability.repeats, format_cell(stability.mean_variance),
                       format_cell(stability.max_variance));
  }

  out << fmt::format("{} records ({} new requests, {} resumed, {} missing) in {}\n",
                     result.records.size(), result.requests_issued, result.resumed, result.missing,
                     records_path.string());
  if (!result.complete) {
    spdlog::warn("evaluation stopped before every prompt was answered");
    return kExitDegraded;
  }
  if (result.degraded) {
    spdlog::warn("more than half of the records are missing");
    return kExitDegraded;
  }
  return kExitOk;
}

int cmd_score(const RunConfig& config, const ScoreOptions& options, std::ostream& out) {
  auto catalog = load_catalog_for(config);
  if (!config.survey) throw ConfigError("no survey configured; pass --survey");
  require_file(*config.survey, "survey");

  std::vector<fs::path> record_files = options.records;
  if (record_files.empty()) {
    fs::path dir = config.output_path("records");
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".jsonl") record_files.push_back(entry.path());
      }
    }
    std::sort(record_files.begin(), record_files.end());
  }
  if (record_files.empty()) throw ConfigError("no records files found; run eval or pass --records");
  std::map<std::string, fs::path> models;
  for (const auto& path : record_files) {
    require_file(path, "records");
    auto label = report::slug(model_label(path));
    if (!models.emplace(label, path).second) {
      throw ConfigError("two records files map to model '" + label + "'");
    }
  }

  bool degraded = false;
  auto ingest = ingest_survey_file(*config.survey, catalog);
  if (ingest.kept.empty()) {
    spdlog::warn("no survey participant passed ingest; H is entirely missing");
    degraded = true;
  }
  auto human = aggregate_human_matrix(ingest.kept, catalog.size());

  OutputSet outputs(config.output_path(options.out.value_or("scores")));
  outputs.add("H.csv", write_matrix_csv(context_matrix_table(human.values, catalog)));
  outputs.add("H_counts.csv",
              write_matrix_csv(context_matrix_table(to_cells(human.contributors), catalog), 0));
  outputs.add("H_irrelevance.csv",
              write_matrix_csv(context_matrix_table(human.irrelevance_rate, catalog)));
  outputs.add("ingest_report.json", ingest.report.to_json());

  auto human_binary = binarize(human);
  csv::Row rate_header{"model", "scope_kind", "scope", "f1"};
  if (config.macro_f1) rate_header.push_back("macro_f1");
  for (const char* column : {"tp", "fp", "fn", "tn"}) rate_header.push_back(column);
  std::string rates = csv::format_row(rate_header);

  ordered_json inputs = ordered_json::array();
  inputs.push_back(file_entry(config.survey->filename().string(), read_file(*config.survey)));

  for (const auto& [label, path] : models) {
    auto records = read_records(path);
    inputs.push_back(file_entry(path.filename().string(), read_file(path)));
    for (const auto& record : records) {
      if (record.value_id < 1 || static_cast<std::size_t>(record.value_id) > catalog.size()) {
        throw IntegrityError(fmt::format("{}: value id {} is outside the catalog of {} values",
                                         path.string(), record.value_id, catalog.size()));
      }
    }
    auto model = aggregate_prompt_scores(records, kContextCount, catalog.size(), config.min_numeric);
    auto distance = alignment_distance(model, human);
    const std::string dir = "models/" + label + "/";
    outputs.add(dir + "L.csv", write_matrix_csv(context_matrix_table(model.values, catalog)));
    outputs.add(dir + "L_counts.csv",
                write_matrix_csv(context_matrix_table(to_cells(model.contributors), catalog), 0));
    outputs.add(dir + "D.csv", write_matrix_csv(context_matrix_table(distance, catalog)));

    std::vector<Scope> rate_scopes{Scope::all()};
    for (auto grouping : config.groupings) {
      auto scopes = scopes_for(grouping);
      rate_scopes.insert(rate_scopes.end(), scopes.begin(), scopes.end());
      std::vector<std::vector<Cell>> rows;
      for (const auto& scope : scopes) rows.push_back(grouped_distance(distance, scope));
      outputs.add(fmt::format("{}grouped_distance_{}.csv", dir, report::grouping_name(grouping)),
                  write_matrix_csv(scope_matrix_table(rows, scopes, catalog)));
    }

    auto model_binary = binarize(model);
    for (const auto& scope : rate_scopes) {
      auto rate = alignment_rate(model_binary, human_binary, scope);
      if (scope.kind() == Scope::Kind::all && !rate.f1) {
        spdlog::warn("{}: alignment rate undefined ({})", label, rate.diagnostic);
        degraded = true;
      }
      csv::Row row{label, std::string(scope.kind_name()), scope.label(), format_cell(rate.f1)};
      if (config.macro_f1) row.push_back(format_cell(rate.macro_f1));
      for (std::size_t count : {rate.counts.tp, rate.counts.fp, rate.counts.fn, rate.counts.tn}) {
        row.push_back(std::to_string(count));
      }
      rates += csv::format_row(row);
    }

    std::vector<Scope> ranking_scopes{Scope::all()};
    for (auto grouping : {report::Grouping::country, report::Grouping::topic}) {
      auto scopes = scopes_for(grouping);
      ranking_scopes.insert(ranking_scopes.end(), scopes.begin(), scopes.end());
    }
    for (const auto& context : enumerate_contexts()) ranking_scopes.push_back(Scope::of(context));
    std::string rankings =
        csv::format_row({"scope_kind", "scope", "rank", "value_id", "value_name", "distance"});
    for (const auto& scope : ranking_scopes) {
      auto ranked = alignment_ranking(grouped_distance(distance, scope),
                                      std::string(scope.kind_name()), scope.label());
      for (const auto& item : ranked.items) {
        rankings += csv::format_row(
            {ranked.scope_kind, ranked.scope, item.rank ? std::to_string(*item.rank) : "",
             std::to_string(item.value_id), catalog[static_cast<std::size_t>(item.value_id - 1)].name,
             format_cell(item.distance)});
      }
    }
    outputs.add(dir + "rankings.csv", std::move(rankings));

    std::string scope_ranking =
        csv::format_row({"scope_kind", "scope", "mean_distance", "rank"});
    for (auto grouping : config.groupings) {
      auto scopes = scopes_for(grouping);
      for (const auto& entry : rank_scopes(distance, scopes)) {
        scope_ranking += csv::format_row(
            {std::string(entry.scope.kind_name()), entry.scope.label(),
             format_cell(entry.mean_distance), entry.rank ? std::to_string(*entry.rank) : ""});
      }
    }
    outputs.add(dir + "scope_ranking.csv", std::move(scope_ranking));

    std::size_t missing = 0;
    for (const auto& record : records) missing += record.raw_score.is_missing() ? 1 : 0;
    if (missing * 2 > records.size()) {
      spdlog::warn("{}: {} of {} records are missing", label, missing, records.size());
      degraded = true;
    }
  }
  outputs.add("rates.csv", std::move(rates));

  ordered_json manifest;
  manifest["seed"] = config.seed;
  manifest["scale"] = config.scale;
  manifest["min_numeric"] = config.min_numeric;
  manifest["macro_f1"] = config.macro_f1;
  manifest["groupings"] = ordered_json::array();
  for (auto grouping : config.groupings) {
    manifest["groupings"].push_back(report::grouping_name(grouping));
  }
  manifest["models"] = ordered_json::array();
  for (const auto& [label, path] : models) manifest["models"].push_back(label);
  manifest["inputs"] = std::move(inputs);
  manifest["outputs"] = outputs.commit();
  fs::path scores_dir = config.output_path(options.out.value_or("scores"));
  write_file_atomic(scores_dir / "score_manifest.json", manifest.dump(2) + "\n");

  out << fmt::format("scored {} model(s) against {} participants into {}\n", models.size(),
                     ingest.kept.size(), scores_dir.string());
  return degraded ? kExitDegraded : kExitOk;
}

namespace {

Catalog catalog_from_table(const MatrixTable& table) {
  Catalog catalog;
  for (std::size_t i = 0; i < table.value_ids.size(); ++i) {
    catalog.push_back({table.value_ids[i], table.value_names[i], "", std::nullopt});
  }
  return catalog;
}

struct RankingRows {
  std::map<std::pair<std::string, std::string>, RankedList> lists;
};

RankingRows parse_rankings(const std::string& text, const fs::path& path) {
  RankingRows rows;
  auto records = csv::parse(text);
  if (records.empty() || records.front().fields.size() != 6 ||
      records.front().fields[0] != "scope_kind") {
    throw SchemaError(path.string() + ": unexpected rankings header");
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    if (f.size() != 6) throw ParseError(path.string() + ": ragged rankings row", records[i].line);
    auto& list = rows.lists[{f[0], f[1]}];
    list.scope_kind = f[0];
    list.scope = f[1];
    RankedItem item;
    if (!f[2].empty()) item.rank = std::stoi(f[2]);
    item.value_id = std::stoi(f[3]);
    item.distance = parse_cell(f[5]);
    list.items.push_back(item);
  }
  return rows;
}

const RankedList& find_ranking(const RankingRows& rows, const std::string& kind,
                               const std::string& scope, const fs::path& path) {
  auto it = rows.lists.find({kind, scope});
  if (it == rows.lists.end()) {
    throw SchemaError(fmt::format("{}: no ranking for {} '{}'", path.string(), kind, scope));
  }
  return it->second;
}

}  // namespace

int cmd_report(const RunConfig& config, const ReportOptions& options, std::ostream& out) {
  fs::path scores = options.scores.value_or(config.output_path("scores"));
  fs::path score_manifest = scores / "score_manifest.json";
  require_file(score_manifest, "score manifest");
  auto manifest = nlohmann::json::parse(read_file(score_manifest), nullptr, false);
  if (manifest.is_discarded() || !manifest.contains("models")) {
    throw SchemaError(score_manifest.string() + " is malformed");
  }
  std::vector<std::string> models = manifest["models"].get<std::vector<std::string>>();

  std::vector<fs::path> inputs{scores / "H.csv", scores / "rates.csv"};
  for (const auto& model : models) {
    for (const char* name : {"L.csv", "D.csv", "rankings.csv"}) {
      inputs.push_back(scores / "models" / model / name);
    }
  }
  for (const auto& path : inputs) require_file(path, "scores");

  std::map<fs::path, std::string> content;
  std::string fingerprint = std::to_string(config.seed);
  for (const auto& path : inputs) {
    content[path] = read_file(path);
    fingerprint += sha256_hex(content[path]);
  }
  std::string run_id = config.run_id.value_or("run-" + sha256_hex(fingerprint).substr(0, 12));

  report::ReportBundle bundle{run_id, config.seed, {}};
  auto add_heatmaps = [&](const std::string& name, const MatrixTable& table,
                          const report::ColorScale& scale, const std::string& title) {
    auto catalog = catalog_from_table(table);
    std::vector<report::Grouping> groupings{report::Grouping::none};
    groupings.insert(groupings.end(), config.groupings.begin(), config.groupings.end());
    for (auto grouping : groupings) {
      auto data = report::make_heatmap(
          table.values, catalog, grouping,
          fmt::format("{} by {}", title, report::grouping_name(grouping)), scale);
      std::string base = fmt::format("heatmaps/{}_{}", name, report::grouping_name(grouping));
      bundle.artifacts.push_back({base + ".svg", report::render_heatmap_svg(data)});
      bundle.artifacts.push_back({base + ".csv", report::heatmap_csv(data)});
    }
  };

  auto human = read_matrix_csv(content[scores / "H.csv"]);
  add_heatmaps("H", human, report::ColorScale::diverging_default(), "Human value responses");
  for (const auto& model : models) {
    fs::path dir = scores / "models" / model;
    add_heatmaps(model + "_L", read_matrix_csv(content[dir / "L.csv"]),
                 report::ColorScale::diverging_default(), model + " value responses");
    add_heatmaps(model + "_D", read_matrix_csv(content[dir / "D.csv"]),
                 report::ColorScale::sequential_default(), model + " alignment distance");
  }

  // Rate tables, one per grouping and rate column.
  auto rate_records = csv::parse(content[scores / "rates.csv"]);
  if (rate_records.empty()) throw SchemaError("rates.csv is empty");
  const auto& rate_header = rate_records.front().fields;
  std::vector<std::string> rate_columns{"f1"};
  if (std::find(rate_header.begin(), rate_header.end(), "macro_f1") != rate_header.end()) {
    rate_columns.push_back("macro_f1");
  }
  for (auto grouping : config.groupings) {
    auto scopes = scopes_for(grouping);
    std::vector<std::string> col_labels;
    for (const auto& scope : scopes) col_labels.push_back(scope.label());
    for (const auto& column : rate_columns) {
      auto column_at = std::find(rate_header.begin(), rate_header.end(), column) - rate_header.begin();
      Grid<Cell> grid(models.size(), scopes.size());
      for (std::size_t r = 1; r < rate_records.size(); ++r) {
        const auto& f = rate_records[r].fields;
        if (f.size() != rate_header.size()) throw ParseError("ragged rates row", rate_records[r].line);
        auto model_it = std::find(models.begin(), models.end(), f[0]);
        auto scope_it = std::find(col_labels.begin(), col_labels.end(), f[2]);
        if (model_it == models.end() || scope_it == col_labels.end() ||
            f[1] != report::grouping_name(grouping)) {
          continue;
        }
        grid(static_cast<std::size_t>(model_it - models.begin()),
             static_cast<std::size_t>(scope_it - col_labels.begin())) =
            parse_cell(f[static_cast<std::size_t>(column_at)]);
      }
      auto table = report::RateTable::make(
          fmt::format("Alignment rate ({}) by {}", column == "f1" ? "F1" : "macro F1",
                      report::grouping_name(grouping)),
          models, col_labels, grid);
      std::string base =
          fmt::format("tables/{}_{}", column == "f1" ? "rates" : "macro_rates",
                      report::grouping_name(grouping));
      bundle.artifacts.push_back({base + ".svg", report::render_rate_table_svg(table)});
      bundle.artifacts.push_back({base + ".csv", report::rate_table_csv(table)});
    }
  }

  for (const auto& model : models) {
    fs::path path = scores / "models" / model / "rankings.csv";
    auto catalog = catalog_from_table(human);
    auto rows = parse_rankings(content[path], path);
    auto add_chart = [&](const std::string& name, const report::RankingChart& chart) {
      std::string base = fmt::format("rankings/{}_{}", model, name);
      bundle.artifacts.push_back({base + ".svg", report::render_ranking_svg(chart)});
      bundle.artifacts.push_back({base + ".csv", report::ranking_csv(chart)});
    };
    auto panel = [&](const std::string& kind, const std::string& scope) {
      return report::make_ranking_panel(find_ranking(rows, kind, scope, path), catalog,
                                        fmt::format("{}: alignment distance ranking, {}", model,
                                                    kind == "all" ? "all contexts" : scope));
    };
    add_chart("all", report::make_ranking_chart(panel("all", Scope::all().label())));
    for (Topic topic : kTopics) {
      add_chart(report::slug(topic_name(topic)),
                report::make_ranking_chart(panel("topic", std::string(topic_name(topic)))));
    }
    add_chart("educational_supervision_vs_healthcare",
              report::make_ranking_chart(
                  panel("topic", std::string(topic_name(Topic::educational_supervision))),
                  panel("topic", std::string(topic_name(Topic::healthcare)))));
  }

  auto run_dir = report::write_bundle(config.output_path("reports"), bundle);
  if (auto problem = report::verify_manifest(run_dir); !problem.empty()) {
    throw IntegrityError(problem);
  }
  out << fmt::format("wrote {} artifacts to {}\n", bundle.artifacts.size(), run_dir.string());
  return kExitOk;
}

int cmd_ingest(const RunConfig& config, const IngestOptions& options, std::ostream& out) {
  auto catalog = load_catalog_for(config);
  if (!config.survey) throw ConfigError("no survey configured; pass --survey");
  require_file(*config.survey, "survey");
  auto result = ingest_survey_file(*config.survey, catalog);

  fs::path dir = config.output_path(options.out.value_or("ingest"));
  write_file_atomic(dir / "ingest_report.json", result.report.to_json());
  write_file_atomic(dir / "open_ended.csv", open_ended_csv(result.kept));

  const auto& report = result.report;
  out << fmt::format("rows {}: accepted {}, rejected_attention {}, rejected_malformed {}\n",
                     report.total_rows, report.accepted, report.rejected_attention,
                     report.rejected_malformed);
  for (const auto& line : report.diagnostics) out << "  " << line << '\n';
  if (!report.empty_contexts.empty()) {
    spdlog::warn("{} contexts have no accepted participants", report.empty_contexts.size());
  }
  return report.accepted == 0 ? kExitDegraded : kExitOk;
}

int cmd_catalog(const RunConfig& config, const CatalogOptions& options, std::ostream& out) {
  auto catalog = load_catalog_for(config);
  if (options.motivational_types) {
    require_file(*options.motivational_types, "motivational type mapping");
    apply_motivational_types(catalog, read_file(*options.motivational_types));
  }
  auto text = catalog_to_csv(catalog);
  if (options.out) {
    write_file_atomic(config.output_path(*options.out), text);
  } else {
    out << text;
  }
  return kExitOk;
}

}  // namespace valuecompass
