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
#include "valuecompass/gateway.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "valuecompass/io.hpp"

namespace valuecompass {

using json = nlohmann::json;
namespace fs = std::filesystem;

void ModelConfig::validate() const {
  if (model_id.empty()) throw ConfigError("model_id must not be empty");
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (!(timeout_seconds > 0.0)) throw ConfigError("timeout must be > 0");
  if (backoff_initial_ms < 0 || backoff_max_ms < backoff_initial_ms) {
    throw ConfigError("backoff bounds must satisfy 0 <= initial <= max");
  }
  if (!endpoint_url.empty() && !endpoint_url.starts_with("http://") &&
      !endpoint_url.starts_with("https://")) {
    throw ConfigError("endpoint_url must be an http(s) URL");
  }
}

ModelConfig ModelConfig::parse(std::string_view json_text) {
  auto doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ConfigError("model config must be a JSON object");
  for (const char* forbidden : {"api_key", "apiKey", "token", "authorization"}) {
    if (doc.contains(forbidden)) {
      throw ConfigError(std::string("model config must not embed credentials ('") + forbidden +
                        "'); name an environment variable in credential_ref");
    }
  }
  ModelConfig config;
  try {
    config.endpoint_url = doc.value("endpoint_url", config.endpoint_url);
    config.model_id = doc.value("model_id", config.model_id);
    config.temperature = doc.value("temperature", config.temperature);
    config.max_retries = doc.value("max_retries", config.max_retries);
    config.parallelism = doc.value("parallelism", config.parallelism);
    config.credential_ref = doc.value("credential_ref", config.credential_ref);
    config.timeout_seconds = doc.value("timeout", config.timeout_seconds);
    config.backoff_initial_ms = doc.value("backoff_initial_ms", config.backoff_initial_ms);
    config.backoff_max_ms = doc.value("backoff_max_ms", config.backoff_max_ms);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  }
  config.validate();
  return config;
}

ModelConfig ModelConfig::load(const fs::path& path) { return parse(read_file(path)); }

std::string ModelConfig::to_json() const {
  nlohmann::ordered_json doc;
  doc["endpoint_url"] = endpoint_url;
  doc["model_id"] = model_id;
  doc["temperature"] = temperature;
  doc["max_retries"] = max_retries;
  doc["parallelism"] = parallelism;
  doc["credential_ref"] = credential_ref;
  doc["timeout"] = timeout_seconds;
  doc["backoff_initial_ms"] = backoff_initial_ms;
  doc["backoff_max_ms"] = backoff_max_ms;
  return doc.dump(2);
}

std::string build_chat_request(const Prompt& prompt, const ModelConfig& config) {
  nlohmann::ordered_json body;
  body["model"] = config.model_id;
  body["messages"] = json::array({{{"role", "user"}, {"content", prompt.text}}});
  body["temperature"] = config.temperature;
  return body.dump();
}

std::optional<std::string> extract_completion_text(std::string_view response_body) {
  auto doc = json::parse(response_body, nullptr, false);
  if (doc.is_discarded()) return std::nullopt;
  try {
    const auto& content = doc.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) return std::nullopt;
    return content.get<std::string>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds delay) { std::this_thread::sleep_for(delay); };
}

std::chrono::milliseconds backoff_delay(const ModelConfig& config, int attempt,
                                        std::optional<double> retry_after_seconds) {
  if (retry_after_seconds && *retry_after_seconds >= 0.0) {
    return std::chrono::milliseconds(static_cast<long long>(std::ceil(*retry_after_seconds * 1000.0)));
  }
  double delay = config.backoff_initial_ms * std::pow(2.0, attempt);
  return std::chrono::milliseconds(
      static_cast<long long>(std::min<double>(delay, config.backoff_max_ms)));
}

namespace {

bool retryable(const TransportResult& result) {
  if (result.status == TransportResult::Status::transport_error) return true;
  int code = result.http_status;
  return code == 408 || code == 429 || code >= 500;
}

std::string describe(const TransportResult& result) {
  if (result.status == TransportResult::Status::transport_error) {
    return "transport error: " + (result.error.empty() ? std::string("unknown") : result.error);
  }
  return "HTTP " + std::to_string(result.http_status);
}

}  // namespace

ScoreRecord query_model(const Prompt& prompt, const ModelConfig& config, ModelBackend& backend,
                        const Sleeper& sleeper) {
  ScoreRecord record;
  record.context_index = prompt.context.index;
  record.value_id = prompt.value_id;
  record.variant_id = prompt.variant.id();

  const auto started = std::chrono::steady_clock::now();
  std::optional<double> simulated;
  for (int attempt = 0;; ++attempt) {
    TransportResult result = backend.send(prompt, config);
    if (result.simulated_latency_ms) simulated = result.simulated_latency_ms;

    if (result.status == TransportResult::Status::ok) {
      auto text = extract_completion_text(result.body);
      if (!text) {
        record.raw_completion = result.body;
        record.failure_reason = "response carried no completion text";
      } else {
        record.raw_completion = *text;
        record.raw_score = parse_score(*text, prompt.option_map, prompt.value_name);
        if (record.raw_score.is_missing()) record.failure_reason = "unparsable completion";
      }
      break;
    }
    if (result.http_status == 401 || result.http_status == 403) {
      throw AuthenticationError("endpoint rejected credentials (HTTP " +
                                std::to_string(result.http_status) + ")");
    }
    record.raw_completion = result.body;
    if (!retryable(result)) {
      record.failure_reason = describe(result);
      break;
    }
    if (attempt >= config.max_retries) {
      record.failure_reason = describe(result) + " after " + std::to_string(attempt + 1) + " attempts";
      break;
    }
    auto delay = backoff_delay(config, attempt, result.retry_after_seconds);
    spdlog::debug("retrying cell ({}, {}, {}) in {} ms: {}", record.context_index, record.value_id,
                  record.variant_id, delay.count(), describe(result));
    sleeper(delay);
  }

  if (simulated) {
    record.latency_ms = *simulated;
  } else {
    record.latency_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
  }
  if (!record.failure_reason.empty()) {
    spdlog::warn("cell ({}, {}, {}) missing: {}", record.context_index, record.value_id,
                 record.variant_id, record.failure_reason);
  }
  return record;
}

namespace {

std::string ordered_lines(const std::vector<std::optional<ScoreRecord>>& slots) {
  std::string out;
  for (const auto& slot : slots) {
    if (slot) out += record_to_jsonl(*slot) + "\n";
  }
  return out;
}

}  // namespace

EvaluationResult run_evaluation(const ModelConfig& config, std::span<const Prompt> batch,
                                ModelBackend& backend, const EvaluationOptions& options) {
  config.validate();
  EvaluationResult result;

  std::map<std::tuple<int, int, int>, std::size_t> index_of;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    auto key = std::make_tuple(batch[i].context.index, batch[i].value_id, batch[i].variant.id());
    if (!index_of.emplace(key, i).second) {
      throw IntegrityError("prompt batch repeats cell (" + std::to_string(std::get<0>(key)) + ", " +
                           std::to_string(std::get<1>(key)) + ", " +
                           std::to_string(std::get<2>(key)) + ")");
    }
  }

  std::vector<std::optional<ScoreRecord>> slots(batch.size());
  if (options.checkpoint) {
    if (options.resume) {
      for (auto& record : read_checkpoint(*options.checkpoint)) {
        auto it = index_of.find(record.key());
        if (it != index_of.end() && !slots[it->second]) {
          slots[it->second] = std::move(record);
          ++result.resumed;
        }
      }
    }
    // A clean prefix, so appends never land after a torn line.
    write_file_atomic(*options.checkpoint, ordered_lines(slots));
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) pending.push_back(i);
  }

  std::ofstream checkpoint_out;
  if (options.checkpoint) {
    checkpoint_out.open(*options.checkpoint, std::ios::app | std::ios::binary);
    if (!checkpoint_out) throw Error("cannot append to " + options.checkpoint->string());
  }

  std::mutex write_mutex;
  std::exception_ptr failure;
  std::atomic<bool> abort{false};
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> issued{0};
  std::atomic<std::size_t> missing_now{0};
  std::size_t done = result.resumed;

  auto worker = [&] {
    while (!abort.load() && !options.stop.stop_requested()) {
      std::size_t n = next.fetch_add(1);
      if (n >= pending.size()) return;
      std::size_t slot = pending[n];
      try {
        issued.fetch_add(1);
        ScoreRecord record = query_model(batch[slot], config, backend, options.sleeper);
        if (record.raw_score.is_missing()) missing_now.fetch_add(1);
        std::string line = record_to_jsonl(record);
        slots[slot] = std::move(record);
        std::lock_guard lock(write_mutex);
        if (checkpoint_out.is_open()) {
          checkpoint_out << line << '\n';
          checkpoint_out.flush();
        }
        ++done;
        if (options.progress) options.progress(done, batch.size(), missing_now.load());
      } catch (...) {
        std::lock_guard lock(write_mutex);
        if (!failure) failure = std::current_exception();
        abort.store(true);
        return;
      }
    }
  };

  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(config.parallelism),
                                               pending.size());
  if (workers == 1) {
    worker();
  } else if (workers > 1) {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) threads.emplace_back(worker);
  }
  checkpoint_out.close();
  if (failure) std::rethrow_exception(failure);

  result.requests_issued = issued.load();
  result.complete = std::ranges::all_of(slots, [](const auto& s) { return s.has_value(); });
  if (result.complete && options.checkpoint) {
    write_file_atomic(*options.checkpoint, ordered_lines(slots));
  }
  for (auto& slot : slots) {
    if (!slot) continue;
    if (slot->raw_score.is_missing()) ++result.missing;
    result.records.push_back(std::move(*slot));
  }
  result.degraded = !batch.empty() && result.missing * 2 > batch.size();
  return result;
}

std::string StabilityReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["repeats"] = repeats;
  doc["mean_variance"] = mean_variance ? nlohmann::ordered_json(*mean_variance) : nlohmann::ordered_json(nullptr);
  doc["max_variance"] = max_variance ? nlohmann::ordered_json(*max_variance) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json cells_json = nlohmann::ordered_json::array();
  for (const auto& cell : cells) {
    nlohmann::ordered_json c;
    c["context_index"] = cell.context_index;
    c["value_id"] = cell.value_id;
    c["variant_id"] = cell.variant_id;
    c["numeric"] = cell.numeric;
    c["mean"] = cell.mean ? nlohmann::ordered_json(*cell.mean) : nlohmann::ordered_json(nullptr);
    c["variance"] = cell.variance ? nlohmann::ordered_json(*cell.variance) : nlohmann::ordered_json(nullptr);
    cells_json.push_back(std::move(c));
  }
  doc["cells"] = std::move(cells_json);
  return doc.dump(2) + "\n";
}

StabilityReport stability_probe(const ModelConfig& config, std::span<const Prompt> batch,
                                ModelBackend& backend, std::size_t repeats,
                                const Sleeper& sleeper) {
  StabilityReport report;
  report.repeats = repeats;
  std::vector<std::vector<double>> samples(batch.size());
  EvaluationOptions options;
  options.sleeper = sleeper;
  for (std::size_t r = 0; r < repeats; ++r) {
    auto run = run_evaluation(config, batch, backend, options);
    for (std::size_t i = 0; i < run.records.size(); ++i) {
      if (run.records[i].raw_score.is_numeric()) {
        samples[i].push_back(scale_to_unit(run.records[i].raw_score));
      }
    }
  }

  double variance_sum = 0.0;
  std::size_t variance_count = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    StabilityCell cell{batch[i].context.index, batch[i].value_id, batch[i].variant.id(),
                       samples[i].size(), std::nullopt, std::nullopt};
    if (!samples[i].empty()) {
      double mean = 0.0;
      for (double v : samples[i]) mean += v;
      mean /= static_cast<double>(samples[i].size());
      double var = 0.0;
      for (double v : samples[i]) var += (v - mean) * (v - mean);
      var /= static_cast<double>(samples[i].size());
      cell.mean = mean;
      cell.variance = var;
      variance_sum += var;
      ++variance_count;
      report.max_variance = std::max(report.max_variance.value_or(0.0), var);
    }
    report.cells.push_back(cell);
  }
  if (variance_count > 0) report.mean_variance = variance_sum / static_cast<double>(variance_count);
  return report;
}

}  // namespace valuecompass
