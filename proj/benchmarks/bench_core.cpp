#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "fsmac/channel.hpp"
#include "fsmac/information.hpp"
#include "fsmac/optimize.hpp"
#include "fsmac/regions.hpp"
#include "fsmac/rng.hpp"
#include "fsmac/simulate.hpp"

namespace {

using namespace fsmac;

// Binary modulo-additive channel with 90%-accurate encoder observations; the
// same instance that ships in channels/modulo_q2.json.
FsMacChannel modulo_channel() {
  const StochasticKernel flip(2, 2, {0.9, 0.1, 0.1, 0.9});
  const ModuloAdditiveSpec spec =
      ModuloAdditiveSpec::validated(2, {0.5, 0.5}, flip, flip, StochasticKernel::identity(2));
  return build_modulo_additive(spec);
}

FsMacChannel random_channel(std::uint64_t seed, const Alphabets& a) {
  rng::Stream g(seed, 0xBE7C);
  const auto kernel = [&](std::size_t rows, std::size_t cols) {
    std::vector<double> probs;
    probs.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (double w : rng::dirichlet(g, cols)) probs.push_back(w);
    }
    return StochasticKernel(rows, cols, probs);
  };
  return FsMacChannel::validated(a, rng::dirichlet(g, a.nS), kernel(a.nS, a.nSa),
                                 kernel(a.nS, a.nSb), kernel(a.nXa * a.nXb * a.nS, a.nY));
}

void BM_StrategyChannel(benchmark::State& state) {
  const FsMacChannel channel = modulo_channel();
  for (auto _ : state) {
    benchmark::DoNotOptimize(strategy_channel(channel));
  }
}
BENCHMARK(BM_StrategyChannel);

void BM_RateTriple(benchmark::State& state) {
  const FsMacChannel channel = modulo_channel();
  const TeamPolicy policy = TeamPolicy::uniform(4, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rate_triple(channel, policy));
  }
}
BENCHMARK(BM_RateTriple);

void BM_SumRateAscent(benchmark::State& state) {
  const FsMacChannel channel = modulo_channel();
  OptimizerConfig config;
  config.restarts = static_cast<std::size_t>(state.range(0));
  config.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_sum_rate(channel, config));
  }
}
BENCHMARK(BM_SumRateAscent)->Arg(1)->Arg(4)->Arg(16);

void BM_ExhaustiveOracle(benchmark::State& state) {
  const FsMacChannel channel = random_channel(7, Alphabets{2, 1, 1, 2, 2, 2, 0});
  const std::size_t grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_oracle_sum_rate(channel, grid));
  }
}
BENCHMARK(BM_ExhaustiveOracle)->Arg(8)->Arg(16)->Arg(32);

void BM_CooperativeAscent(benchmark::State& state) {
  const FsMacChannel channel = random_channel(11, Alphabets{2, 1, 2, 2, 2, 2, 0});
  OptimizerConfig config;
  config.restarts = 4;
  config.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_cooperative(channel, 1.0, config));
  }
}
BENCHMARK(BM_CooperativeAscent);

void BM_InnerRegion(benchmark::State& state) {
  const FsMacChannel channel = modulo_channel();
  OptimizerConfig config;
  config.restarts = 4;
  config.threads = 1;
  ScenarioDescriptor scenario;
  const std::vector<double> lambdas = default_lambdas(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inner_bound_region(ChannelSpec{channel}, scenario, lambdas, config));
  }
}
BENCHMARK(BM_InnerRegion);

void BM_SimulationTrials(benchmark::State& state) {
  const FsMacChannel channel = modulo_channel();
  const TeamPolicy policy = TeamPolicy::uniform(4, 4);
  SimulationParams params;
  params.n = static_cast<std::size_t>(state.range(0));
  params.rateA = 0.3;
  params.rateB = 0.3;
  params.epsilon = 0.1;
  params.trials = 50;
  params.rngSeed = 5;
  params.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_error(channel, policy, params));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 50);
}
BENCHMARK(BM_SimulationTrials)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
