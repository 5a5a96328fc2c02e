#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "clustertest/graph.hpp"
#include "clustertest/rng.hpp"

namespace clustertest {

// Exact endpoint distribution of a lazy walk of length t started at origin.
struct WalkDistribution {
  std::vector<double> probs;
  std::uint32_t t = 0;
  Vertex origin = 0;

  double l2_norm_squared() const;
};

double l2_distance_squared(const WalkDistribution& p, const WalkDistribution& q);

// Histogram of r sampled walk endpoints, sorted by vertex id.
struct SampleCounts {
  std::vector<std::pair<Vertex, std::uint32_t>> counts;
  std::uint64_t r = 0;
  Vertex origin = 0;
  std::uint32_t t = 0;
};

// One lazy step: each incident edge is crossed with probability 1/(2d); with
// the remaining probability (at least 1/2) the walk stays put. Costs one
// neighbor query when an edge slot is probed; `queries`, if given, counts
// oracle accesses.
Vertex walk_step(const BoundedDegreeGraph& g, Vertex v, Rng& rng,
                 std::uint64_t* queries = nullptr);

// Endpoint of a walk of t composed steps (t = 0 returns v).
Vertex sample_endpoint(const BoundedDegreeGraph& g, Vertex v, std::uint32_t t, Rng& rng,
                       std::uint64_t* queries = nullptr);

// r independent endpoints; walk j uses the stream (key.seed, key.a, key.b,
// walk_base + j), so the histogram is a pure function of its inputs.
struct WalkStreamKey {
  std::uint64_t seed = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t walk_base = 0;
};
SampleCounts sample_counts(const BoundedDegreeGraph& g, Vertex v, std::uint32_t t,
                           std::uint64_t r, const WalkStreamKey& key,
                           std::uint64_t* queries = nullptr);
// Convenience stream keyed by (seed, v) as in the module contract.
SampleCounts sample_counts(const BoundedDegreeGraph& g, Vertex v, std::uint32_t t,
                           std::uint64_t r, std::uint64_t seed,
                           std::uint64_t* queries = nullptr);

// Exact p_v^t by t sparse applications of the lazy-walk operator.
inline constexpr std::size_t kExactDistributionCap = 100000;
WalkDistribution exact_distribution(const BoundedDegreeGraph& g, Vertex v, std::uint32_t t);

// Probability that a walk from v stays inside A for all t steps, computed
// exactly as (1_v (W I_A)^t)(A). Requires v in A.
double remain_probability(const BoundedDegreeGraph& g, Vertex v, const VertexSet& a,
                          std::uint32_t t);

// Average of remain_probability over all v in A (single matrix recursion).
double mean_remain_probability(const BoundedDegreeGraph& g, const VertexSet& a,
                               std::uint32_t t);

}  // namespace clustertest
