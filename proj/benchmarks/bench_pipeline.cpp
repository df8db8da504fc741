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
#include <benchmark/benchmark.h>

#include <random>

#include "valuecompass/catalog.hpp"
#include "valuecompass/contexts.hpp"
#include "valuecompass/gateway.hpp"
#include "valuecompass/metrics.hpp"
#include "valuecompass/prompts.hpp"

namespace valuecompass {
namespace {

void BM_PromptBatch(benchmark::State& state) {
  PromptEngine engine;
  auto contexts = enumerate_contexts();
  for (auto _ : state) {
    auto batch = engine.batch(contexts, default_catalog());
    benchmark::DoNotOptimize(batch.data());
  }
  state.SetItemsProcessed(state.iterations() * 12544);
}
BENCHMARK(BM_PromptBatch)->Unit(benchmark::kMillisecond);

void BM_ParseScore(benchmark::State& state) {
  const std::vector<std::string> completions{
      R"({"score": 2})",
      "Sure! Here is my answer: {\"rating\": \"Strongly Disagree\"}",
      "I would say I agree with that.",
      "The answer is 1.",
      "I am sorry, but I cannot share personal opinions.",
  };
  auto options = OptionMap::five_point();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_score(completions[i++ % completions.size()], options, "Equality"));
  }
}
BENCHMARK(BM_ParseScore);

std::vector<ScoreRecord> mock_records() {
  PromptEngine engine;
  auto contexts = enumerate_contexts();
  auto batch = engine.batch(contexts, default_catalog());
  MockBackend backend(42);
  ModelConfig config;
  config.model_id = "mock";
  std::vector<ScoreRecord> records;
  records.reserve(batch.size());
  for (const auto& prompt : batch) records.push_back(query_model(prompt, config, backend));
  return records;
}

void BM_AggregatePromptScores(benchmark::State& state) {
  auto records = mock_records();
  for (auto _ : state) {
    benchmark::DoNotOptimize(aggregate_prompt_scores(records, 28, 56));
  }
}
BENCHMARK(BM_AggregatePromptScores)->Unit(benchmark::kMicrosecond);

Grid<Cell> random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Grid<Cell> m(28, 56);
  for (std::size_t r = 0; r < 28; ++r) {
    for (std::size_t c = 0; c < 56; ++c) m(r, c) = unit(rng);
  }
  return m;
}

void BM_AlignmentMetrics(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto l = random_matrix(rng);
  auto h = random_matrix(rng);
  for (auto _ : state) {
    auto bl = binarize(l);
    auto bh = binarize(h);
    auto rate = alignment_rate(bl, bh, Scope::all());
    auto d = alignment_distance(l, h);
    auto grouped = grouped_distance(d, Scope::parse("Germany"));
    auto ranked = alignment_ranking(grouped, "country", "Germany");
    benchmark::DoNotOptimize(rate);
    benchmark::DoNotOptimize(ranked);
  }
}
BENCHMARK(BM_AlignmentMetrics)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace valuecompass

BENCHMARK_MAIN();
