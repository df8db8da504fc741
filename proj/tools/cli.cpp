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
#include "cli.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "valuecompass/commands.hpp"
#include "valuecompass/error.hpp"

namespace valuecompass {

namespace {

struct GlobalFlags {
  std::string config;
  std::string output_dir;
  std::string catalog;
  std::string vignettes;
  std::string survey;
  std::string scale;
  std::string run_id;
  std::vector<std::string> groupings;
  std::optional<std::uint64_t> seed;
  std::optional<int> min_numeric;
  bool macro_f1 = false;
  bool verbose = false;
};

RunConfig resolve_config(const GlobalFlags& flags) {
  RunConfig config = flags.config.empty() ? RunConfig{} : RunConfig::load(flags.config);
  if (!flags.output_dir.empty()) config.output_dir = flags.output_dir;
  if (!flags.catalog.empty()) config.catalog = flags.catalog;
  if (!flags.vignettes.empty()) config.vignettes = flags.vignettes;
  if (!flags.survey.empty()) config.survey = flags.survey;
  if (!flags.scale.empty()) config.scale = flags.scale;
  if (!flags.run_id.empty()) config.run_id = flags.run_id;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.min_numeric) config.min_numeric = *flags.min_numeric;
  if (flags.macro_f1) config.macro_f1 = true;
  if (!flags.groupings.empty()) {
    config.groupings.clear();
    for (const auto& name : flags.groupings) {
      if (name == "country") {
        config.groupings.push_back(report::Grouping::country);
      } else if (name == "topic") {
        config.groupings.push_back(report::Grouping::topic);
      } else {
        throw ConfigError("unknown grouping '" + name + "' (expected country or topic)");
      }
    }
  }
  // Re-run the file-level checks on the merged result.
  return RunConfig::parse(config.to_json());
}

template <class T>
std::optional<T> optional_of(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return T(text);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ValueCompass: measure human and model value alignment across contexts"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--config", flags.config, "Run config JSON (version 1)");
  app.add_option("--output-dir", flags.output_dir, "Directory for every output");
  app.add_option("--catalog", flags.catalog, "Value catalog CSV");
  app.add_option("--vignettes", flags.vignettes, "Topic vignettes JSON");
  app.add_option("--survey", flags.survey, "Survey CSV");
  app.add_option("--scale", flags.scale, "Option map: five_point or four_point");
  app.add_option("--run-id", flags.run_id, "Report directory name");
  app.add_option("--grouping", flags.groupings, "country and/or topic");
  app.add_option("--seed", flags.seed, "Random seed for the mock backend");
  app.add_option("--min-numeric", flags.min_numeric, "Numeric variants needed for a model cell");
  app.add_flag("--macro-f1", flags.macro_f1, "Also report macro-averaged F1");
  app.add_flag("-v,--verbose", flags.verbose, "Debug logging");

  auto* prompts = app.add_subcommand("prompts", "Generate the prompt batch");
  std::string contexts;
  std::string prompts_out;
  prompts->add_option("--contexts", contexts, "Scope selector, e.g. Healthcare or India");
  prompts->add_option("--out", prompts_out, "Batch file (default prompts.jsonl)");

  auto* eval = app.add_subcommand("eval", "Query a model for every prompt");
  EvalOptions eval_options;
  std::string model_config;
  std::string eval_prompts;
  std::string eval_out;
  std::optional<std::size_t> stability;
  eval->add_flag("--mock", eval_options.mock, "Use the deterministic mock backend");
  eval->add_option("--model-config", model_config, "Model config JSON");
  eval->add_option("--prompts", eval_prompts, "Prompt batch (default <output-dir>/prompts.jsonl)");
  eval->add_option("--out", eval_out, "Records file (default records/<model>.jsonl)");
  eval->add_flag("--resume", eval_options.resume, "Continue from an existing records file");
  eval->add_option("--stability", stability, "Re-query every prompt N times and report variance")
      ->expected(0, 1)
      ->default_str("10");

  auto* score = app.add_subcommand("score", "Compute L, H, D, rates and rankings");
  std::vector<std::string> records;
  std::string score_out;
  score->add_option("--records", records, "Records file(s); default every records/*.jsonl");
  score->add_option("--out", score_out, "Scores directory (default scores)");

  auto* report_cmd = app.add_subcommand("report", "Render heatmaps, rate tables and rankings");
  std::string scores_dir;
  report_cmd->add_option("--scores", scores_dir, "Scores directory (default <output-dir>/scores)");

  auto* ingest = app.add_subcommand("ingest", "Validate a survey CSV");
  std::string ingest_out;
  ingest->add_option("--out", ingest_out, "Ingest output directory (default ingest)");

  auto* catalog = app.add_subcommand("catalog", "Validate and print the value catalog");
  std::string types;
  std::string catalog_out;
  catalog->add_option("--motivational-types", types, "CSV mapping value id to motivational type");
  catalog->add_option("--out", catalog_out, "Write the catalog here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  auto sink = std::make_shared<spdlog::sinks::stderr_color_sink_mt>();
  spdlog::set_default_logger(std::make_shared<spdlog::logger>("valuecompass", sink));
  spdlog::set_level(flags.verbose ? spdlog::level::debug : spdlog::level::info);

  return guarded(err, [&]() -> int {
    RunConfig config = resolve_config(flags);
    if (prompts->parsed()) {
      return cmd_prompts(config, {optional_of<std::string>(contexts),
                                  optional_of<std::filesystem::path>(prompts_out)},
                         out);
    }
    if (eval->parsed()) {
      eval_options.model_config = optional_of<std::filesystem::path>(model_config);
      eval_options.prompts = optional_of<std::filesystem::path>(eval_prompts);
      eval_options.out = optional_of<std::filesystem::path>(eval_out);
      if (eval->count("--stability") > 0) eval_options.stability = stability.value_or(10);
      return cmd_eval(config, eval_options, out);
    }
    if (score->parsed()) {
      ScoreOptions options;
      for (const auto& path : records) options.records.emplace_back(path);
      options.out = optional_of<std::filesystem::path>(score_out);
      return cmd_score(config, options, out);
    }
    if (report_cmd->parsed()) {
      return cmd_report(config, {optional_of<std::filesystem::path>(scores_dir)}, out);
    }
    if (ingest->parsed()) {
      return cmd_ingest(config, {optional_of<std::filesystem::path>(ingest_out)}, out);
    }
    return cmd_catalog(config,
                       {optional_of<std::filesystem::path>(types),
                        optional_of<std::filesystem::path>(catalog_out)},
                       out);
  });
}

}  // namespace valuecompass
