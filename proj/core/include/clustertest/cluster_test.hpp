#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clustertest/collision_tests.hpp"
#include "clustertest/graph.hpp"

namespace clustertest {

// Named tunables. Theory mode substitutes the unspecified universal
// constants of the walk-length and sample-count formulas; practical mode
// scales every parameter through them.
struct TestConstants {
  double c_s = 8.0;
  double c_ell = 1.0;
  double c_r = 4.0;
  double c_sigma = 8.0;
  double closeness_c = 8.0;
};

enum class ParamMode { theory, practical };

struct TestParams {
  std::size_t n = 0;
  std::uint32_t d = 1;
  unsigned k = 1;
  double epsilon = 0.5;
  double phi = 0.3;
  std::uint64_t s = 0;   // sample set size
  std::uint32_t ell = 1; // walk length
  double sigma = 0;      // norm-screen threshold
  std::uint64_t r = 0;   // samples per distribution per batch
  double xi = 0;         // closeness threshold, 1/(4n)
  double delta = 0;      // per-pair failure budget, 1/(12 s^2)
  ParamMode mode = ParamMode::practical;
  TestConstants constants;

  std::uint64_t batches() const { return closeness_batches(delta); }
  void validate() const;
};

// s = 1536 k ln(8(k+1))/eps^2, ell = c_ell k^4 log2(n)/phi^2,
// sigma = 192 s k / n, r = 192 c s sqrt(s k n) ln s.
TestParams theory_params(std::size_t n, std::uint32_t d, unsigned k, double epsilon,
                         double phi, const TestConstants& constants = {});

// Desk-scale variant: s = max(3(k+1), ceil(c_s k ln(8(k+1)))),
// ell = ceil(c_ell ln(n)/phi^2), r = ceil(c_r sqrt(n k) ln(s+1)),
// sigma = c_sigma s k / n.
TestParams practical_params(std::size_t n, std::uint32_t d, unsigned k, double epsilon,
                            double phi, const TestConstants& overrides = {});

struct NormVerdict {
  std::uint32_t slot = 0;
  Vertex vertex = 0;
  TesterVerdict verdict;
};

struct PairVerdict {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  TesterVerdict verdict;
};

struct SimilarityGraph {
  std::vector<Vertex> sample_vertices;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<PairVerdict> pair_verdicts;
};

std::size_t connected_components(const SimilarityGraph& h);

enum class Verdict { accept, reject };
enum class RejectReason { none, norm_screen, components };

struct RunReport {
  Verdict verdict = Verdict::reject;
  RejectReason reject_reason = RejectReason::none;
  std::size_t component_count = 0;
  SimilarityGraph similarity;
  std::vector<NormVerdict> norm_verdicts;
  std::uint64_t seed = 0;
  TestParams params;
  bool oracle = false;
  std::uint64_t query_count = 0;
  double wall_ms = 0.0;
};

// The sampled tester: uniform sample of s vertices, per-vertex collision
// norm screen at sigma, pairwise closeness tests at xi over the similarity
// graph, accept iff at most k connected components. Deterministic given
// (graph, params, seed) for any worker count.
RunReport k_cluster_test(const BoundedDegreeGraph& g, const TestParams& params,
                         std::uint64_t seed, unsigned threads = 1);

// Same pipeline with exact walk distributions in place of sampling: the norm
// screen compares ||p_v^ell||^2 against sigma and an edge appears iff the
// exact distance is at most 5/(8n), the midpoint of the promise gap.
RunReport oracle_cluster_test(const BoundedDegreeGraph& g, const TestParams& params,
                              std::uint64_t seed);

}  // namespace clustertest
