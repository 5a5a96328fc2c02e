#include <benchmark/benchmark.h>

#include "clustertest/cluster_test.hpp"
#include "clustertest/collision_tests.hpp"
#include "clustertest/generators.hpp"
#include "clustertest/random_walk.hpp"
#include "clustertest/spectral.hpp"

using namespace clustertest;

namespace {

const BoundedDegreeGraph& walk_graph() {
  static const auto inst = planted_clusterable({5000, 5000}, 8, 10, 1);
  return inst.graph;
}

void BM_WalkEndpoint(benchmark::State& state) {
  const auto& g = walk_graph();
  const auto t = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t walk = 0;
  for (auto _ : state) {
    Rng rng = Rng::stream(7, 0, 0, walk++);
    benchmark::DoNotOptimize(sample_endpoint(g, 17, t, rng));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * t);
}
BENCHMARK(BM_WalkEndpoint)->Arg(64)->Arg(256);

void BM_SampleCounts(benchmark::State& state) {
  const auto& g = walk_graph();
  const auto r = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t batch = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_counts(g, 17, 64, r, WalkStreamKey{9, 0, batch++, 0}));
  }
}
BENCHMARK(BM_SampleCounts)->Arg(200)->Arg(2000);

void BM_DistanceEstimate(benchmark::State& state) {
  const auto& g = walk_graph();
  const auto a = sample_counts(g, 17, 64, 2000, WalkStreamKey{5, 0, 0, 0});
  const auto b = sample_counts(g, 9017, 64, 2000, WalkStreamKey{5, 1, 0, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(l2_distance_estimate(a, b));
  }
}
BENCHMARK(BM_DistanceEstimate);

void BM_ExactDistribution(benchmark::State& state) {
  const auto inst = planted_clusterable({1000, 1000}, 8, 4, 2);
  const auto t = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_distribution(inst.graph, 3, t));
  }
}
BENCHMARK(BM_ExactDistribution)->Arg(50)->Arg(200);

void BM_Eigensolve(benchmark::State& state) {
  const auto g = random_regular_expander(static_cast<std::size_t>(state.range(0)), 8, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigensolve(g));
  }
}
BENCHMARK(BM_Eigensolve)->Arg(128)->Arg(512);

void BM_BruteForceConductance(benchmark::State& state) {
  const auto g = random_regular_expander(static_cast<std::size_t>(state.range(0)), 4, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_conductance_bruteforce(g));
  }
}
BENCHMARK(BM_BruteForceConductance)->Arg(16)->Arg(20);

void BM_KClusterTest(benchmark::State& state) {
  const auto inst = planted_clusterable({1000, 1000}, 8, 6, 4);
  TestConstants constants;
  constants.c_s = 2.0;
  constants.c_r = 0.5;
  const auto params = practical_params(2000, 8, 2, 0.5, 0.3, constants);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_cluster_test(inst.graph, params, seed++));
  }
}
BENCHMARK(BM_KClusterTest)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
