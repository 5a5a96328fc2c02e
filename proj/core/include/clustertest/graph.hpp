#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clustertest/rational.hpp"

namespace clustertest {

using Vertex = std::uint32_t;

// Sorted, duplicate-free set of vertex ids of a graph on n vertices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::vector<Vertex> members, std::size_t n);

  static VertexSet full(std::size_t n);
  static VertexSet range(Vertex begin, Vertex end, std::size_t n);

  const std::vector<Vertex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t universe() const { return n_; }
  bool contains(Vertex v) const;

  VertexSet complement() const;

 private:
  std::vector<Vertex> members_;
  std::size_t n_ = 0;
};

// Immutable undirected graph with a declared degree bound d. Stored simple
// (no self-loops, no multi-edges); adjacency lists are sorted ascending.
class BoundedDegreeGraph {
 public:
  // Validates ids, degree bound, simplicity. Edges may be given in either
  // orientation; both directions are stored.
  static BoundedDegreeGraph from_edges(std::size_t n, std::uint32_t d,
                                       const std::vector<std::pair<Vertex, Vertex>>& edges);

  std::size_t vertex_count() const { return static_cast<std::size_t>(n_); }
  std::uint32_t degree_bound() const { return d_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::uint32_t degree(Vertex v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  Vertex neighbor(Vertex v, std::uint32_t i) const {
    return neighbors_[offsets_[v] + i];
  }
  bool has_edge(Vertex u, Vertex v) const;

  // Edges as (u, v) pairs with u < v, lexicographically sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  std::uint64_t n_ = 0;
  std::uint32_t d_ = 1;
  std::vector<std::uint64_t> offsets_;
  std::vector<Vertex> neighbors_;
};

// The neighbor-query oracle: i-th neighbor of v, or nullopt past the degree
// (the bounded-degree model's "special symbol").
std::optional<Vertex> neighbor_query(const BoundedDegreeGraph& g, Vertex v, std::uint32_t i);

// Number of edges with exactly one endpoint in S.
std::uint64_t cut_size(const BoundedDegreeGraph& g, const VertexSet& s);

// phi_G(S) = e(S, V\S) / (d |S|); zero for S = V. S must be non-empty.
Rational outer_conductance(const BoundedDegreeGraph& g, const VertexSet& s);

// Exact phi(G) = min over nonempty S, |S| <= n/2. Exhaustive over subsets;
// requires n <= kBruteForceCap. Singleton graph: 1/d by convention.
inline constexpr std::size_t kBruteForceCap = 24;
Rational min_conductance_bruteforce(const BoundedDegreeGraph& g);

// Same enumeration, also returning an argmin set.
std::pair<VertexSet, Rational> min_conductance_cut_bruteforce(const BoundedDegreeGraph& g);

// Induced subgraph on S with ids remapped to [0, |S|); keeps the parent's
// degree bound. id_map[i] is the parent id of new vertex i.
struct InducedSubgraph {
  BoundedDegreeGraph graph;
  std::vector<Vertex> id_map;
};
InducedSubgraph induced_subgraph(const BoundedDegreeGraph& g, const VertexSet& s);

// phi(G[S]) with the same degree bound d, via exhaustive enumeration.
Rational inner_conductance(const BoundedDegreeGraph& g, const VertexSet& s);

// Edge-list text format: first line "n d", then one "u v" per line with
// 0 <= u < v < n. Loader validates ids, simplicity and the degree bound.
BoundedDegreeGraph read_edge_list(std::istream& in);
BoundedDegreeGraph load_edge_list(const std::string& path);
void write_edge_list(const BoundedDegreeGraph& g, std::ostream& out);
void save_edge_list(const BoundedDegreeGraph& g, const std::string& path);

std::size_t component_count(const BoundedDegreeGraph& g);

}  // namespace clustertest
