#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clustertest/graph.hpp"
#include "clustertest/rational.hpp"

namespace clustertest {

// Certification settings for randomized expander constructions. lambda2 is
// measured on the block's own regularity; blocks below the floor are
// resampled.
struct ExpanderConfig {
  double lambda2_floor = 0.05;
  unsigned max_retries = 100;
  bool certify = true;
};

struct PartDesign {
  std::uint64_t cross_degree = 0;
  Rational phi_out;       // cross_degree / (d * |part|), exact
  double lambda2_in = 0;  // certified gap of the part, parent-d normalization
};

struct InstanceDesign {
  std::string kind;
  unsigned k = 0;
  std::uint32_t part_degree = 0;
  std::uint64_t cross_edges = 0;
  double lambda2_floor = 0;
  std::vector<PartDesign> per_part;
};

// A generated benchmark graph with its planted ground truth.
struct ClusterInstance {
  BoundedDegreeGraph graph;
  std::vector<VertexSet> parts;
  InstanceDesign design;
  std::uint64_t seed = 0;

  std::vector<Rational> phi_outs() const;
};

// Random simple d-regular graph (Steger-Wormald stub matching), certified as
// an expander per cfg.
BoundedDegreeGraph random_regular_expander(std::size_t m, std::uint32_t d,
                                           std::uint64_t seed,
                                           const ExpanderConfig& cfg = {});

// h parts, each a (d-1)-regular certified expander on sizes[i] vertices laid
// out contiguously; cross_edges edges between uniformly random part pairs on
// the per-vertex reserved degree slot.
ClusterInstance planted_clusterable(const std::vector<std::size_t>& sizes, std::uint32_t d,
                                    std::uint64_t cross_edges, std::uint64_t seed,
                                    const ExpanderConfig& cfg = {});

// Disjoint union of k_plus equal d-regular certified expanders.
ClusterInstance far_instance_disjoint(unsigned k_plus, std::size_t size, std::uint32_t d,
                                      std::uint64_t seed, const ExpanderConfig& cfg = {});

// Two (d-1)-regular expanders of size half joined by cut_edges vertex-disjoint
// cross edges; requires cut_edges/(d*half) <= 1/(4d).
ClusterInstance dumbbell(std::size_t half, std::uint32_t d, std::uint64_t cut_edges,
                         std::uint64_t seed, const ExpanderConfig& cfg = {});

enum class LowConductanceKind { path, cycle, grid };

// Deterministic negative controls without cluster structure.
BoundedDegreeGraph low_conductance_family(LowConductanceKind kind, std::size_t n);

}  // namespace clustertest
