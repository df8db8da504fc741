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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "valuecompass/error.hpp"
#include "valuecompass/prompts.hpp"
#include "valuecompass/scale.hpp"
#include "valuecompass/score_record.hpp"

namespace valuecompass {

/// Connection and sampling settings for one chat-completion model. The API
/// key is never stored here, only the name of the environment variable that
/// holds it.
struct ModelConfig {
  std::string endpoint_url;
  std::string model_id;
  double temperature = 0.2;
  int max_retries = 3;
  int parallelism = 4;
  std::string credential_ref = "OPENAI_API_KEY";
  double timeout_seconds = 60.0;
  int backoff_initial_ms = 500;
  int backoff_max_ms = 30000;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  static ModelConfig parse(std::string_view json_text);
  static ModelConfig load(const std::filesystem::path& path);
  std::string to_json() const;
};

/// Authentication rejected by the endpoint (401/403). Never retried.
class AuthenticationError : public CredentialError {
 public:
  using CredentialError::CredentialError;
};

/// What one attempt at the wire produced.
struct TransportResult {
  enum class Status { ok, http_error, transport_error };
  Status status = Status::transport_error;
  int http_status = 0;
  std::string body;
  std::optional<double> retry_after_seconds;
  /// Backends that simulate a remote model report a deterministic latency
  /// here instead of wall-clock time.
  std::optional<double> simulated_latency_ms;
  std::string error;
};

class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  /// Must be safe to call concurrently.
  virtual TransportResult send(const Prompt& prompt, const ModelConfig& config) = 0;
};

/// Chat-completion request body (model, messages, temperature).
std::string build_chat_request(const Prompt& prompt, const ModelConfig& config);

/// Pulls choices[0].message.content out of a chat-completion response.
std::optional<std::string> extract_completion_text(std::string_view response_body);

/// Extraction ladder over free-form model output:
///   1. first well-formed JSON object holding a recognized key
///      ("score", "rating", "answer", "response", "choice" or the value name);
///   2. a standalone integer that is a valid option code;
///   3. a case-insensitive option-label match;
///   4. the irrelevant marker.
/// Anything else, or conflicting evidence within a rung, is missing.
Answer parse_score(std::string_view completion, const OptionMap& options,
                   std::string_view value_name = {});

using Sleeper = std::function<void(std::chrono::milliseconds)>;
Sleeper real_sleeper();

/// Delay before retry number `attempt` (0-based): initial * 2^attempt,
/// capped, or the server-supplied delay when one was given.
std::chrono::milliseconds backoff_delay(const ModelConfig& config, int attempt,
                                        std::optional<double> retry_after_seconds);

/// One prompt, with retries on transport failures, 5xx and 429.
/// Throws AuthenticationError on 401/403.
ScoreRecord query_model(const Prompt& prompt, const ModelConfig& config, ModelBackend& backend,
                        const Sleeper& sleeper = real_sleeper());

struct EvaluationOptions {
  /// Records are appended here as they complete; rewritten in prompt order
  /// once the run is complete.
  std::optional<std::filesystem::path> checkpoint;
  bool resume = false;
  std::stop_token stop;
  Sleeper sleeper = real_sleeper();
  std::function<void(std::size_t done, std::size_t total, std::size_t missing)> progress;
};

struct EvaluationResult {
  std::vector<ScoreRecord> records;  // prompt order; partial if interrupted
  std::size_t requests_issued = 0;   // prompts sent this run
  std::size_t resumed = 0;           // prompts satisfied from the checkpoint
  std::size_t missing = 0;
  bool complete = false;
  /// More than half the records are missing.
  bool degraded = false;
};

EvaluationResult run_evaluation(const ModelConfig& config, std::span<const Prompt> batch,
                                ModelBackend& backend, const EvaluationOptions& options = {});

struct StabilityCell {
  int context_index = 0;
  int value_id = 0;
  int variant_id = 0;
  std::size_t numeric = 0;
  std::optional<double> mean;
  std::optional<double> variance;  // population variance of unit scores
};

struct StabilityReport {
  std::size_t repeats = 0;
  std::vector<StabilityCell> cells;
  std::optional<double> mean_variance;
  std::optional<double> max_variance;
  std::string to_json() const;
};

/// Re-queries each prompt `repeats` times and reports per-cell variance.
/// Diagnostic only.
StabilityReport stability_probe(const ModelConfig& config, std::span<const Prompt> batch,
                                ModelBackend& backend, std::size_t repeats,
                                const Sleeper& sleeper = real_sleeper());

/// Live OpenAI-compatible endpoint: POST {endpoint_url}/chat/completions.
/// The constructor reads the bearer token from the environment variable
/// named by `credential_ref` and throws CredentialError if it is unset.
class HttpBackend : public ModelBackend {
 public:
  explicit HttpBackend(const ModelConfig& config);
  TransportResult send(const Prompt& prompt, const ModelConfig& config) override;

 private:
  std::string scheme_host_port_;
  std::string base_path_;
  std::string token_;
};

/// Deterministic stand-in for a model. The answer for a prompt is a pure
/// function of the seed and (context, value, variant); completions use the
/// prompt's own option map and requested output format.
class MockBackend : public ModelBackend {
 public:
  explicit MockBackend(std::uint64_t seed) : seed_(seed) {}

  TransportResult send(const Prompt& prompt, const ModelConfig& config) override;

  std::string completion_for(const Prompt& prompt) const;
  std::size_t calls() const noexcept { return calls_.load(); }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace valuecompass
