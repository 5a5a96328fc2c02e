#include <doctest.h>

#include <cmath>

#include "clustertest/cluster_test.hpp"
#include "clustertest/errors.hpp"
#include "clustertest/generators.hpp"
#include "clustertest/random_walk.hpp"
#include "clustertest/report_json.hpp"
#include "clustertest/rng.hpp"
#include "test_support.hpp"

using namespace clustertest;
using namespace clustertest::testing;

namespace {

TestConstants calibrated() {
  TestConstants c;
  c.c_s = 2.0;
  c.c_ell = 1.0;
  c.c_r = 0.5;
  c.c_sigma = 8.0;
  return c;
}

}  // namespace

TEST_CASE("theory params follow the stated formulas") {
  const auto p = theory_params(4096, 8, 2, 0.5, 0.5);
  CHECK(p.s == 39052);  // ceil(1536*2*ln(24)/0.25)
  CHECK(p.ell == 768);  // ceil(1*2^4*log2(4096)/0.25) with c_ell = 1
  CHECK(p.sigma == doctest::Approx(192.0 * 39052.0 * 2.0 / 4096.0));
  CHECK(p.xi == 1.0 / (4.0 * 4096.0));
  CHECK(p.delta == doctest::Approx(1.0 / (12.0 * 39052.0 * 39052.0)));
  CHECK(p.s >= p.k + 1);
  p.validate();

  CHECK_THROWS_AS((void)theory_params(4096, 8, 2, 0.7, 0.5), InputError);
}

TEST_CASE("practical params follow the stated formulas") {
  const auto p = practical_params(10000, 8, 2, 0.5, 0.5);
  CHECK(p.s == 51);  // max(9, ceil(8*2*ln 24))
  CHECK(p.r == 2236);  // ceil(4*sqrt(2e4)*ln 52)
  CHECK(p.sigma == doctest::Approx(8.0 * 51.0 * 2.0 / 10000.0));
  CHECK(p.xi == 1.0 / (4.0 * 10000.0));
  CHECK(p.batches() == 249);
  p.validate();

  const auto p3 = practical_params(10000, 8, 3, 0.5, 0.5);
  CHECK(p3.s == 84);

  // The size floor keeps s >= k+1 even with tiny constants.
  TestConstants tiny;
  tiny.c_s = 0.01;
  CHECK(practical_params(1000, 8, 5, 0.5, 0.5, tiny).s == 18);
}

TEST_CASE("connected components of the similarity graph") {
  SimilarityGraph h;
  h.sample_vertices = {4, 9, 9, 2, 7};
  CHECK(connected_components(h) == 5);

  for (std::uint32_t i = 0; i < 5; ++i) {
    for (std::uint32_t j = i + 1; j < 5; ++j) h.edges.emplace_back(i, j);
  }
  CHECK(connected_components(h) == 1);

  SimilarityGraph two;
  two.sample_vertices = {0, 1, 2, 3, 4};
  two.edges = {{0, 1}, {1, 2}, {0, 2}, {3, 4}};
  CHECK(connected_components(two) == 2);
}

TEST_CASE("adding similarity edges never flips accept into reject") {
  Rng rng = Rng::stream(5, 0xadd, 0, 0);
  for (int trial = 0; trial < 50; ++trial) {
    SimilarityGraph h;
    h.sample_vertices.assign(12, 0);
    for (std::uint32_t i = 0; i < 12; ++i) {
      for (std::uint32_t j = i + 1; j < 12; ++j) {
        if (rng.unit() < 0.15) h.edges.emplace_back(i, j);
      }
    }
    const std::size_t before = connected_components(h);
    h.edges.emplace_back(static_cast<std::uint32_t>(rng.below(12)),
                         static_cast<std::uint32_t>(rng.below(12)));
    CHECK(connected_components(h) <= before);
  }
}

TEST_CASE("singleton graph is accepted for k = 1") {
  const auto g = BoundedDegreeGraph::from_edges(1, 1, {});
  const auto params = practical_params(1, 1, 1, 0.5, 0.5, calibrated());
  const auto report = k_cluster_test(g, params, 7);
  CHECK(report.verdict == Verdict::accept);
  CHECK(report.component_count == 1);

  const auto oracle = oracle_cluster_test(g, params, 7);
  CHECK(oracle.verdict == Verdict::accept);
}

TEST_CASE("statistical tester separates planted from far instances") {
  // Scaled-down version of the acceptance experiment: 30 seeds, >= 2/3.
  const auto planted = planted_clusterable({600, 600}, 8, 6, 51);
  const auto far = far_instance_disjoint(3, 400, 8, 52);
  const auto params = practical_params(1200, 8, 2, 0.5, 0.3, calibrated());

  int accepts = 0, rejects = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    if (k_cluster_test(planted.graph, params, seed).verdict == Verdict::accept) {
      ++accepts;
    }
    if (k_cluster_test(far.graph, params, 1000 + seed).verdict == Verdict::reject) {
      ++rejects;
    }
  }
  CHECK(accepts >= 20);
  CHECK(rejects >= 20);
}

TEST_CASE("oracle path is exact on planted and far instances") {
  const auto planted = planted_clusterable({500, 500}, 8, 4, 61);
  const auto far = far_instance_disjoint(3, 300, 8, 62);
  const auto params_p = practical_params(1000, 8, 2, 0.5, 0.3);
  const auto params_f = practical_params(900, 8, 2, 0.5, 0.3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CHECK(oracle_cluster_test(planted.graph, params_p, seed).verdict == Verdict::accept);
    const auto far_report = oracle_cluster_test(far.graph, params_f, seed);
    CHECK(far_report.verdict == Verdict::reject);
    CHECK(far_report.reject_reason == RejectReason::components);
  }
}

TEST_CASE("oracle path joins pairs inside the audited core sets") {
  const auto planted = planted_clusterable({400, 400}, 8, 4, 71);
  const auto params = practical_params(800, 8, 2, 0.5, 0.3);
  const auto report = oracle_cluster_test(planted.graph, params, 3);
  // Within-part distances on this instance sit far below the edge threshold,
  // so same-part samples always join.
  std::vector<std::size_t> part_of(800);
  for (std::size_t p = 0; p < 2; ++p) {
    for (Vertex v : planted.parts[p].members()) part_of[v] = p;
  }
  for (const auto& pv : report.similarity.pair_verdicts) {
    const Vertex u = report.similarity.sample_vertices[pv.i];
    const Vertex v = report.similarity.sample_vertices[pv.j];
    if (part_of[u] == part_of[v]) CHECK(pv.verdict.accepted);
  }
}

TEST_CASE("runs are deterministic and independent of the worker count") {
  const auto inst = planted_clusterable({300, 300}, 8, 4, 81);
  const auto params = practical_params(600, 8, 2, 0.5, 0.3, calibrated());
  const auto one = k_cluster_test(inst.graph, params, 11, 1);
  const auto four = k_cluster_test(inst.graph, params, 11, 4);
  CHECK(run_report_replay_key(one) == run_report_replay_key(four));
  const auto again = k_cluster_test(inst.graph, params, 11, 2);
  CHECK(run_report_replay_key(one) == run_report_replay_key(again));
}

TEST_CASE("query accounting matches an independent recount and the bound") {
  const auto inst = planted_clusterable({150, 150}, 6, 2, 91);
  auto params = practical_params(300, 6, 2, 0.5, 0.4, calibrated());
  const std::uint64_t seed = 13;
  const auto report = k_cluster_test(inst.graph, params, seed);

  // Recount by stepping the same keyed streams against the oracle directly.
  std::uint64_t recount = 0;
  auto walk_queries = [&](std::uint64_t purpose, std::uint64_t slot,
                          std::uint64_t walk_index, Vertex start) {
    Rng rng = Rng::stream(seed, purpose, slot, walk_index);
    Vertex cur = start;
    for (std::uint32_t step = 0; step < params.ell; ++step) {
      const auto pick = static_cast<std::uint32_t>(rng.below(2ull * inst.graph.degree_bound()));
      if (pick < inst.graph.degree_bound()) {
        ++recount;
        if (pick < inst.graph.degree(cur)) cur = inst.graph.neighbor(cur, pick);
      }
    }
  };
  const auto& samples = report.similarity.sample_vertices;
  for (std::uint64_t i = 0; i < params.s; ++i) {
    for (std::uint64_t j = 0; j < params.r; ++j) {
      walk_queries(rng_purpose::kNormWalks, i, j, samples[i]);
    }
  }
  if (report.reject_reason != RejectReason::norm_screen) {
    for (std::uint64_t i = 0; i < params.s; ++i) {
      for (std::uint64_t b = 0; b < params.batches(); ++b) {
        for (std::uint64_t j = 0; j < params.r; ++j) {
          walk_queries(rng_purpose::kPairWalks, i, b * params.r + j, samples[i]);
        }
      }
    }
  }
  CHECK(report.query_count == recount);
  const std::uint64_t bound =
      params.s * (params.batches() + 1) * params.r * params.ell;
  CHECK(report.query_count <= bound);
}

TEST_CASE("norm screen rejects a point-mass-heavy graph before pairwise work") {
  // Isolated vertices keep the whole walk mass in place: ||p||^2 = 1.
  const auto g = BoundedDegreeGraph::from_edges(500, 4, {});
  auto params = practical_params(500, 4, 2, 0.5, 0.5, calibrated());
  REQUIRE(params.sigma < 1.0);
  const auto report = k_cluster_test(g, params, 5);
  CHECK(report.verdict == Verdict::reject);
  CHECK(report.reject_reason == RejectReason::norm_screen);
  CHECK(report.norm_verdicts.size() == params.s);
  CHECK(report.similarity.pair_verdicts.empty());
}

TEST_CASE("params validation rejects mismatched graphs") {
  const auto g = complete_graph(4);
  auto params = practical_params(5, 3, 2, 0.5, 0.5);
  CHECK_THROWS_AS((void)k_cluster_test(g, params, 1), InputError);
}
