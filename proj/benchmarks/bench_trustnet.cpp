#include <benchmark/benchmark.h>

#include "trustnet/dynamics.hpp"
#include "trustnet/estimator.hpp"
#include "trustnet/metagame.hpp"
#include "trustnet/network.hpp"
#include "trustnet/round.hpp"

using namespace trustnet;

namespace {

void BM_LtseSolve(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto dist = GameDistribution::exponential(2.0, size, size);
  Rng rng(1);
  std::vector<BimatrixGame> games;
  for (int i = 0; i < 256; ++i) games.push_back(dist.draw(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        leader_ltse_strategy(games[i++ % games.size()], TrustLevel(1.0), TrustLevel(2.0)));
  }
}
BENCHMARK(BM_LtseSolve)->Arg(2)->Arg(4)->Arg(16);

void BM_EstimatorPair(benchmark::State& state) {
  const UtilityEstimator est(GameDistribution::exponential(2.0),
                             static_cast<std::size_t>(state.range(0)), 1);
  double d = 0.0;
  for (auto _ : state) {
    // A fresh key every call, so the cache never answers.
    benchmark::DoNotOptimize(est.expected(1.0, d += 1e-9));
  }
}
BENCHMARK(BM_EstimatorPair)->Arg(1000)->Arg(10000);

void BM_KarateRound(benchmark::State& state) {
  const auto net = karate_club_network();
  const UtilityEstimator est(GameDistribution::exponential(4.0), 1000, 1);
  auto agents = make_agents(net, 2);
  for (std::size_t i = 0; i < agents.size(); ++i) agents[i].delta = (i % 3) * 10.0;
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(play_round(net, agents, est, {}, ++t, 1));
  }
}
BENCHMARK(BM_KarateRound);

void BM_BestResponse(benchmark::State& state) {
  const auto net = karate_club_network();
  const UtilityEstimator est(GameDistribution::exponential(4.0), 1000, 1);
  auto agents = make_agents(net, 2);
  for (std::size_t i = 0; i < agents.size(); ++i) agents[i].delta = (i % 3) * 10.0;
  const DeltaSearchConfig search;
  const auto view = known_view(net, agents, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response_delta(view, search, est, {}));
  }
}
BENCHMARK(BM_BestResponse);

}  // namespace

BENCHMARK_MAIN();
