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
#include <fmt/format.h>

#include <nlohmann/json.hpp>

#include "valuecompass/gateway.hpp"

namespace valuecompass {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t cell_hash(std::uint64_t seed, int a, int b, int c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(a));
  h = splitmix64(h ^ static_cast<std::uint64_t>(b));
  return splitmix64(h ^ static_cast<std::uint64_t>(c));
}

nlohmann::json code_value(const std::string& code) {
  try {
    std::size_t used = 0;
    int n = std::stoi(code, &used);
    if (used == code.size()) return n;
  } catch (const std::exception&) {
  }
  return code;
}

}  // namespace

std::string MockBackend::completion_for(const Prompt& prompt) const {
  const int context = prompt.context.index;
  const int value = prompt.value_id;
  const int variant = prompt.variant.id();

  // A per-(context, value) inclination, nudged by each variant.
  std::uint64_t base_hash = cell_hash(seed_, context, value, 0);
  std::uint64_t variant_hash = cell_hash(seed_, context, value, variant);
  int raw = static_cast<int>(base_hash % 5) - 2;
  switch (variant_hash % 8) {
    case 0:
      raw = std::min(raw + 1, 2);
      break;
    case 1:
      raw = std::max(raw - 1, -2);
      break;
    default:
      break;
  }

  const std::string key =
      prompt.variant.requirement == RequirementVariant::score_key ? "score" : prompt.value_name;
  const auto& options = prompt.option_map;
  if (options.irrelevant_label && (variant_hash >> 8) % 50 == 0) {
    return nlohmann::json{{key, *options.irrelevant_label}}.dump();
  }

  const ScaleOption* chosen = nullptr;
  for (const auto& option : options.options) {
    if (option.raw_score == raw) chosen = &option;
  }
  if (chosen == nullptr && !options.options.empty()) {
    // Scale without this level (e.g. no neutral): lean to the nearest side.
    int target = raw == 0 ? (((variant_hash >> 16) & 1) ? 1 : -1) : raw;
    for (const auto& option : options.options) {
      if (chosen == nullptr || std::abs(option.raw_score - target) < std::abs(chosen->raw_score - target)) {
        chosen = &option;
      }
    }
  }
  if (chosen == nullptr) return "I cannot answer that.";

  switch ((variant_hash >> 24) % 10) {
    case 0:
      return fmt::format("My answer: {}.", chosen->label);
    case 1:
      return fmt::format("Sure! {}", nlohmann::json{{key, code_value(chosen->code)}}.dump());
    default:
      return nlohmann::json{{key, code_value(chosen->code)}}.dump();
  }
}

TransportResult MockBackend::send(const Prompt& prompt, const ModelConfig& config) {
  calls_.fetch_add(1);
  nlohmann::ordered_json body;
  body["id"] = fmt::format("mock-{}-{}-{}", prompt.context.index, prompt.value_id,
                           prompt.variant.id());
  body["object"] = "chat.completion";
  body["model"] = config.model_id;
  body["choices"] = nlohmann::json::array(
      {{{"index", 0},
        {"message", {{"role", "assistant"}, {"content", completion_for(prompt)}}},
        {"finish_reason", "stop"}}});

  TransportResult result;
  result.status = TransportResult::Status::ok;
  result.http_status = 200;
  result.body = body.dump();
  std::uint64_t h = cell_hash(seed_, prompt.context.index, prompt.value_id, prompt.variant.id());
  result.simulated_latency_ms = 40.0 + static_cast<double>((h >> 32) % 360);
  return result;
}

}  // namespace valuecompass
