#pragma once

#include <cstdint>
#include <vector>

#include "clustertest/graph.hpp"
#include "clustertest/rational.hpp"

namespace clustertest {

struct FarnessConfig {
  double epsilon = 0.3;        // distance budget the constructions are sized for
  double c_exp = 0.025;        // conductance floor for degree-3 expander blocks
  unsigned max_retries = 100;  // block certification retries
  double phi_budget = 0.05;    // iterative_partition split-acceptance budget
};

// Vertex-disjoint pairs from V \ A; a pair {v, v} marks a low-degree vertex
// that can absorb two new edges on its own.
struct PairSet {
  std::vector<std::pair<Vertex, Vertex>> pairs;  // first <= second
};

struct ConstructSResult {
  PairSet s;                    // ceil(|A|/4) pairs, lexicographic
  std::size_t s_prime_size = 0; // candidate pool before truncation
};

// Greedy pairing pass: low-degree vertices (deg <= d-2) become self-pairs,
// the rest is matched along edges in ascending vertex order.
ConstructSResult construct_s(const BoundedDegreeGraph& g, const VertexSet& a,
                             const FarnessConfig& cfg = {});

struct RepairStats {
  std::uint64_t edges_deleted = 0;
  std::uint64_t edges_inserted = 0;
  std::size_t pair_count = 0;
};

// Rewires the neighborhood of A so the result can reach conductance alpha:
// removes the edges at A and inside the chosen pairs, rebuilds A as a
// bounded-degree expander (single vertex / path / subdivided expander by
// |A|), and matches the reserved pair slots back to A. Maintains the degree
// bound and an edit budget of (d+4)|A|.
BoundedDegreeGraph repair_to_expander(const BoundedDegreeGraph& g, const VertexSet& a,
                                      double alpha, std::uint64_t seed,
                                      const FarnessConfig& cfg = {},
                                      RepairStats* stats = nullptr);

enum class CutMode { exact, sweep };

struct SparseCutResult {
  VertexSet side;
  Rational phi;
};

// Exact mode: argmin-conductance subset with |S| <= n/2 (n <= 24).
// Sweep mode: best threshold cut of the second eigenvector.
SparseCutResult sparse_cut_search(const BoundedDegreeGraph& g, CutMode mode);

struct PartitionCertificate {
  std::vector<VertexSet> parts;
  std::vector<Rational> phi;      // outer conductance of each part in g
  std::size_t min_part_size = 0;
  std::uint64_t cut_edge_total = 0;  // e(V_1, ..., V_h)
  double size_floor = 0.0;           // eps^2 n / (1152 k)
  bool size_floor_ok = false;
  double max_phi = 0.0;
  bool reached_k_plus_1 = false;
};

// Refines {V} by repeatedly splitting the part whose sweep cut is cheapest,
// stopping at k+1 parts or when every available split exceeds the budget
// (which signals the instance may be clusterable).
PartitionCertificate iterative_partition(const BoundedDegreeGraph& g, unsigned k,
                                         double epsilon, const FarnessConfig& cfg = {});

}  // namespace clustertest
