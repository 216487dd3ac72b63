#include <benchmark/benchmark.h>

#include "mbrlab/bounds.hpp"
#include "mbrlab/decode.hpp"
#include "mbrlab/hypothesis.hpp"
#include "mbrlab/transport.hpp"
#include "mbrlab/utility.hpp"

using namespace mbrlab;

namespace {

Categorical zipf_dist(std::size_t size) {
  return make_human_distribution(HypothesisSpace::indexed(size),
                                 ZipfFamily{1.0}, 0);
}

void BM_Sample(benchmark::State& state) {
  const auto dist = zipf_dist(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto s = sample(dist, 1000, seed++);
    benchmark::DoNotOptimize(s.indices.data());
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Sample)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ExactDecode(benchmark::State& state) {
  const std::size_t size = static_cast<std::size_t>(state.range(0));
  const auto dist = zipf_dist(size);
  const auto utility = build_embedding_utility(size, 4, 1.0, 3);
  for (auto _ : state) {
    auto r = mbr_decode_exact(utility, dist);
    benchmark::DoNotOptimize(r.chosen);
  }
}
BENCHMARK(BM_ExactDecode)->Arg(200)->Arg(1000);

void BM_McDecode(benchmark::State& state) {
  const std::size_t size = 1000;
  const auto dist = zipf_dist(size);
  const auto utility = build_embedding_utility(size, 4, 1.0, 3);
  const auto refs = sample(dist, static_cast<std::size_t>(state.range(0)), 9);
  for (auto _ : state) {
    auto r = mbr_decode_mc(utility, refs);
    benchmark::DoNotOptimize(r.chosen);
  }
}
BENCHMARK(BM_McDecode)->Arg(100)->Arg(500)->Arg(2000);

void BM_RegretTrial(benchmark::State& state) {
  const std::size_t size = static_cast<std::size_t>(state.range(0));
  const auto human = zipf_dist(size);
  const auto utility = std::make_shared<EmbeddingUtility>(
      build_embedding_utility(size, 4, 1.0, 3));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    TrialConfig config(human, utility);
    config.d_size = 5000;
    config.n = 500;
    config.seed = seed++;
    auto report = measure_regret(config);
    benchmark::DoNotOptimize(report.regret_n);
  }
}
BENCHMARK(BM_RegretTrial)->Arg(200)->Arg(1000);

void BM_TightenedCost(benchmark::State& state) {
  const std::size_t size = static_cast<std::size_t>(state.range(0));
  const auto utility = build_embedding_utility(size, 4, 1.0, 3);
  for (auto _ : state) {
    auto cost = default_cost(utility, CostMode::tightened, 2048);
    benchmark::DoNotOptimize(cost.values().data());
  }
}
BENCHMARK(BM_TightenedCost)->Arg(100)->Arg(400);

void BM_Wasserstein(benchmark::State& state) {
  const std::size_t size = static_cast<std::size_t>(state.range(0));
  const auto human = zipf_dist(size);
  const auto model = empirical_distribution(sample(human, 2000, 7));
  const auto utility = build_embedding_utility(size, 4, 1.0, 3);
  const auto cost = default_cost(utility, CostMode::trivial);
  for (auto _ : state) {
    auto r = wasserstein(human, model, cost);
    benchmark::DoNotOptimize(r.distance);
  }
}
BENCHMARK(BM_Wasserstein)->Arg(100)->Arg(200)->Arg(500);

void BM_BoundEvaluation(benchmark::State& state) {
  BoundInputs inputs;
  inputs.n = 500;
  inputs.d_size = 5000;
  inputs.dim = 4;
  inputs.delta = 0.01;
  inputs.wd_hm = 0.05;
  inputs.wd_tt = 0.02;
  inputs.alpha_err = 0.1;
  for (auto _ : state) {
    auto report = evaluate_bounds(inputs, true);
    benchmark::DoNotOptimize(report.values.size());
  }
}
BENCHMARK(BM_BoundEvaluation);

}  // namespace

BENCHMARK_MAIN();
