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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valuecompass/report.hpp"

namespace valuecompass {

enum ExitCode : int { kExitOk = 0, kExitDegraded = 1, kExitInput = 2, kExitCredential = 3 };

/// Pipeline configuration. JSON with "version": 1; flags override fields.
struct RunConfig {
  static constexpr int kVersion = 1;

  std::optional<std::filesystem::path> catalog;    // default: bundled catalog
  std::optional<std::filesystem::path> vignettes;  // default: bundled vignettes
  std::vector<std::filesystem::path> model_configs;
  std::optional<std::filesystem::path> survey;
  std::string scale = "five_point";
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 42;
  std::vector<report::Grouping> groupings{report::Grouping::country, report::Grouping::topic};
  bool macro_f1 = false;
  int min_numeric = 1;
  std::optional<std::string> run_id;

  /// Relative paths inside the file resolve against `base_dir`.
  static RunConfig parse(std::string_view json_text, const std::filesystem::path& base_dir = {});
  static RunConfig load(const std::filesystem::path& path);
  std::string to_json() const;

  /// Relative paths land under output_dir; anything escaping it is a ConfigError.
  std::filesystem::path output_path(const std::filesystem::path& path) const;
};

struct PromptsOptions {
  std::optional<std::string> contexts;  // scope selector, e.g. "Healthcare"
  std::optional<std::filesystem::path> out;
};

struct EvalOptions {
  bool mock = false;
  std::optional<std::filesystem::path> model_config;
  std::optional<std::filesystem::path> prompts;
  std::optional<std::filesystem::path> out;
  bool resume = false;
  std::optional<std::size_t> stability;
};

struct ScoreOptions {
  std::vector<std::filesystem::path> records;  // default: every records/*.jsonl
  std::optional<std::filesystem::path> out;
};

struct ReportOptions {
  std::optional<std::filesystem::path> scores;
};

struct IngestOptions {
  std::optional<std::filesystem::path> out;
};

struct CatalogOptions {
  std::optional<std::filesystem::path> motivational_types;
  std::optional<std::filesystem::path> out;
};

int cmd_prompts(const RunConfig& config, const PromptsOptions& options, std::ostream& out);
int cmd_eval(const RunConfig& config, const EvalOptions& options, std::ostream& out);
int cmd_score(const RunConfig& config, const ScoreOptions& options, std::ostream& out);
int cmd_report(const RunConfig& config, const ReportOptions& options, std::ostream& out);
int cmd_ingest(const RunConfig& config, const IngestOptions& options, std::ostream& out);
int cmd_catalog(const RunConfig& config, const CatalogOptions& options, std::ostream& out);

/// Runs `body`, mapping library exceptions to exit codes and writing the
/// diagnostic to `err`.
template <class F>
int guarded(std::ostream& err, F&& body);

int exit_code_for(const std::exception& error);

}  // namespace valuecompass

#include <exception>
#include <ostream>

namespace valuecompass {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& error) {
    err << "error: " << error.what() << '\n';
    return exit_code_for(error);
  }
}

}  // namespace valuecompass
