// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#include <benchmark/benchmark.h>

#include <random>

#include "viralkit/classify.hpp"
#include "viralkit/features.hpp"
#include "viralkit/metrics.hpp"
#include "viralkit/synth.hpp"
#include "viralkit/vireval.hpp"

namespace {

using namespace viralkit;

std::vector<ScoredLabel> random_scores(std::size_t n) {
  std::mt19937_64 gen(1);
  std::lognormal_distribution<double> score(0.0, 2.0);
  std::vector<ScoredLabel> s(n);
  for (auto& x : s) x = {score(gen), gen() % 10 == 0};
  s[0].is_viral = true;
  s[1].is_viral = false;
  return s;
}

void BM_RocCurve(benchmark::State& state) {
  const auto s = random_scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const auto c = roc_curve(s, FprMode::RestrictedUniverse);
    benchmark::DoNotOptimize(auc(c));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RocCurve)->Range(1 << 10, 1 << 20);

void BM_CountViralAtTpr(benchmark::State& state) {
  const auto s = random_scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_viral_at_tpr(s, 0.95));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountViralAtTpr)->Range(1 << 10, 1 << 18);

struct Corpus {
  TweetTable tweets;
  AuthorTable authors;
};

const Corpus& corpus() {
  static const Corpus c = [] {
    SynthConfig cfg;
    cfg.n_authors = 5000;
    auto g = generate(cfg);
    return Corpus{g.tweets, attach_timeline_stats(g.tweets, g.authors)};
  }();
  return c;
}

void BM_ScoreAll(benchmark::State& state) {
  const auto kind = kAllMetrics[static_cast<std::size_t>(state.range(0))];
  const auto& c = corpus();
  for (auto _ : state) benchmark::DoNotOptimize(score_all(kind, c.tweets, c.authors));
  state.SetLabel(std::string(metric_name(kind)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.tweets.size()));
}
BENCHMARK(BM_ScoreAll)->DenseRange(0, 6);

void BM_EvaluateAllMetrics(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_metrics(c.tweets, c.authors, kAllMetrics));
}
BENCHMARK(BM_EvaluateAllMetrics)->Unit(benchmark::kMillisecond);

void BM_ParseEntities(benchmark::State& state) {
  const std::string text =
      "@newsdesk Breaking: storm hits the coast, stay safe everyone #weather #alert https://t.co/AbCdEfGhIj";
  for (auto _ : state) benchmark::DoNotOptimize(parse_entities(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseEntities);

void BM_LogregEpoch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 39;
  std::mt19937_64 gen(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<DesignRow> rows(n);
  for (auto& r : rows) {
    r.x.resize(dim);
    for (auto& v : r.x) v = normal(gen);
    r.y = static_cast<int>(gen() % 2);
  }
  TrainMeta hyper;
  hyper.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train_logreg(rows, hyper));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogregEpoch)->Range(256, 16384);

}  // namespace

BENCHMARK_MAIN();
