#include <doctest.h>

#include <sstream>

#include "clustertest/errors.hpp"
#include "clustertest/graph.hpp"
#include "clustertest/rng.hpp"
#include "test_support.hpp"

using namespace clustertest;
using namespace clustertest::testing;

TEST_CASE("neighbor_query follows adjacency order and past-degree is absent") {
  const auto g = cycle_graph(4);
  CHECK(neighbor_query(g, 0, 0) == Vertex{1});
  CHECK(neighbor_query(g, 0, 1) == Vertex{3});
  CHECK(!neighbor_query(g, 0, 2).has_value());
  CHECK_THROWS_AS((void)neighbor_query(g, 7, 0), InputError);

  const auto singleton = BoundedDegreeGraph::from_edges(1, 1, {});
  CHECK(!neighbor_query(singleton, 0, 0).has_value());
}

TEST_CASE("outer conductance") {
  const auto cyc = cycle_graph(4);
  CHECK(outer_conductance(cyc, VertexSet({0}, 4)) == Rational(1, 1));
  CHECK(outer_conductance(cyc, VertexSet::full(4)) == Rational(0, 1));

  const auto k4 = complete_graph(4);
  CHECK(outer_conductance(k4, VertexSet({1, 3}, 4)) == Rational(2, 3));
  CHECK_THROWS_AS((void)outer_conductance(k4, VertexSet({}, 4)), InputError);
}

TEST_CASE("brute-force minimum conductance") {
  CHECK(min_conductance_bruteforce(complete_graph(4)) == Rational(2, 3));

  // Two disjoint edges: a component is a zero cut.
  const auto disjoint = BoundedDegreeGraph::from_edges(4, 1, {{0, 1}, {2, 3}});
  CHECK(min_conductance_bruteforce(disjoint) == Rational(0, 1));

  const auto singleton = BoundedDegreeGraph::from_edges(1, 3, {});
  CHECK(min_conductance_bruteforce(singleton) == Rational(1, 3));

  const auto big = random_bounded_graph(30, 4, 0.2, 99);
  CHECK_THROWS_AS((void)min_conductance_bruteforce(big), CapacityError);
}

TEST_CASE("induced subgraph") {
  const auto k4 = complete_graph(4);
  const auto k3 = induced_subgraph(k4, VertexSet({0, 2, 3}, 4));
  CHECK(k3.graph.vertex_count() == 3);
  CHECK(k3.graph.edge_count() == 3);
  CHECK(k3.id_map == std::vector<Vertex>{0, 2, 3});

  const auto cyc = cycle_graph(4);
  const auto antipodal = induced_subgraph(cyc, VertexSet({0, 2}, 4));
  CHECK(antipodal.graph.edge_count() == 0);

  const auto self = induced_subgraph(cyc, VertexSet::full(4));
  CHECK(self.graph.edges() == cyc.edges());
}

TEST_CASE("inner conductance uses the parent degree bound") {
  const auto k4 = complete_graph(4);
  CHECK(inner_conductance(k4, VertexSet({0, 1, 2}, 4)) == Rational(2, 3));
  CHECK(inner_conductance(k4, VertexSet({0, 1}, 4)) == Rational(1, 3));

  const auto cyc = cycle_graph(4);
  CHECK(inner_conductance(cyc, VertexSet({0, 2}, 4)) == Rational(0, 1));
}

TEST_CASE("handshake symmetry and the complement identity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_bounded_graph(14, 5, 0.25, seed);
    Rng rng = Rng::stream(seed, 0x5e7, 0, 0);
    std::vector<Vertex> members;
    for (Vertex v = 0; v < 14; ++v) {
      if (rng.unit() < 0.4) members.push_back(v);
    }
    if (members.empty() || members.size() == 14) continue;
    const VertexSet s(members, 14);
    const VertexSet comp = s.complement();
    CHECK(cut_size(g, s) == cut_size(g, comp));
    // phi(S)|S| + phi(comp)|comp| = 2 e(S, V\S) / d
    const Rational lhs(
        outer_conductance(g, s).num * static_cast<std::int64_t>(s.size()) *
                outer_conductance(g, comp).den +
            outer_conductance(g, comp).num * static_cast<std::int64_t>(comp.size()) *
                outer_conductance(g, s).den,
        outer_conductance(g, s).den * outer_conductance(g, comp).den);
    const Rational rhs(2 * static_cast<std::int64_t>(cut_size(g, s)), g.degree_bound());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("brute force lower-bounds every sampled subset") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_bounded_graph(12, 4, 0.3, seed + 50);
    const Rational best = min_conductance_bruteforce(g);
    Rng rng = Rng::stream(seed, 0xb0b, 0, 0);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Vertex> members;
      for (Vertex v = 0; v < 12; ++v) {
        if (rng.unit() < 0.3) members.push_back(v);
      }
      if (members.empty() || members.size() > 6) continue;
      CHECK(best <= outer_conductance(g, VertexSet(members, 12)));
    }
  }
}

TEST_CASE("induced subgraph never increases degrees") {
  const auto g = random_bounded_graph(16, 5, 0.3, 7);
  const VertexSet s({1, 2, 5, 8, 9, 13}, 16);
  const auto sub = induced_subgraph(g, s);
  for (Vertex v = 0; v < sub.graph.vertex_count(); ++v) {
    CHECK(sub.graph.degree(v) <= g.degree(sub.id_map[v]));
  }
}

TEST_CASE("edge-list loader validates") {
  {
    std::istringstream in("4 2\n0 1\n1 2\n2 3\n0 3\n");
    const auto g = read_edge_list(in);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 4);
  }
  {
    std::istringstream in("4 2\n0 1\n1 0\n");  // u < v violated
    CHECK_THROWS_AS((void)read_edge_list(in), InputError);
  }
  {
    std::istringstream in("4 2\n0 1\n0 1\n");  // multi-edge
    CHECK_THROWS_AS((void)read_edge_list(in), InputError);
  }
  {
    std::istringstream in("3 1\n0 1\n1 2\n");  // degree bound exceeded
    CHECK_THROWS_AS((void)read_edge_list(in), InputError);
  }
  {
    std::istringstream in("3 2\n0 5\n");  // id out of range
    CHECK_THROWS_AS((void)read_edge_list(in), InputError);
  }
}

TEST_CASE("edge-list round trip is canonical") {
  const auto g = random_bounded_graph(20, 4, 0.2, 3);
  std::ostringstream first;
  write_edge_list(g, first);
  std::istringstream back(first.str());
  const auto reloaded = read_edge_list(back);
  std::ostringstream second;
  write_edge_list(reloaded, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("component count") {
  CHECK(component_count(complete_graph(4)) == 1);
  CHECK(component_count(BoundedDegreeGraph::from_edges(4, 1, {{0, 1}, {2, 3}})) == 2);
  CHECK(component_count(BoundedDegreeGraph::from_edges(3, 1, {})) == 3);
}
