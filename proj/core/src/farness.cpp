#include "clustertest/farness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "clustertest/errors.hpp"
#include "clustertest/rng.hpp"
#include "clustertest/spectral.hpp"

namespace clustertest {

namespace {

std::size_t a_size_cap(std::size_t n, double epsilon) {
  return static_cast<std::size_t>(std::ceil(epsilon * static_cast<double>(n) / 9.0));
}

}  // namespace

ConstructSResult construct_s(const BoundedDegreeGraph& g, const VertexSet& a,
                             const FarnessConfig& cfg) {
  const std::size_t n = g.vertex_count();
  if (!(cfg.epsilon > 0 && cfg.epsilon <= 0.5)) {
    throw InputError("construct_s: epsilon must be in (0, 1/2]");
  }
  if (a.size() > a_size_cap(n, cfg.epsilon)) {
    throw InputError("construct_s: |A| exceeds ceil(eps*n/9)");
  }
  std::vector<char> in_a(n, 0);
  for (Vertex v : a.members()) in_a[v] = 1;

  std::vector<std::pair<Vertex, Vertex>> pool;
  std::vector<char> in_u(n, 0);
  const std::uint32_t d = g.degree_bound();
  for (Vertex v = 0; v < n; ++v) {
    if (in_a[v]) continue;
    if (g.degree(v) + 2 <= d) {
      pool.emplace_back(v, v);  // low-degree self-pair
    } else {
      in_u[v] = 1;
    }
  }
  // Ascending matching pass over U; a single pass leaves no matchable pair.
  for (Vertex v = 0; v < n; ++v) {
    if (!in_u[v]) continue;
    for (std::uint32_t i = 0; i < g.degree(v); ++i) {
      const Vertex u = g.neighbor(v, i);
      if (u > v && in_u[u]) {
        pool.emplace_back(v, u);
        in_u[v] = in_u[u] = 0;
        break;
      }
    }
  }
  std::sort(pool.begin(), pool.end());

  const std::size_t want = (a.size() + 3) / 4;  // ceil(|A|/4)
  if (pool.size() < want) {
    throw ConstructionError("construct_s: fewer than ceil(|A|/4) pairs available");
  }
  ConstructSResult out;
  out.s_prime_size = pool.size();
  out.s.pairs.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
  return out;
}

namespace {

// Degree-<=3 expander block on the given vertices: a seeded cycle plus a
// greedy matching, certified at conductance >= c_exp (exhaustively when
// small, by the Cheeger bound otherwise).
std::vector<std::pair<Vertex, Vertex>> expander_block_degree3(
    const std::vector<Vertex>& verts, std::uint64_t seed, const FarnessConfig& cfg) {
  const std::size_t m = verts.size();
  if (m == 1) return {};
  if (m == 2) return {{std::min(verts[0], verts[1]), std::max(verts[0], verts[1])}};
  for (unsigned attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Rng rng = Rng::stream(seed, rng_purpose::kGenerator, 0x3e9, attempt);
    std::vector<std::uint32_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(m - i));
      std::swap(order[i], order[j]);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> local;
    auto add = [&local](std::uint32_t x, std::uint32_t y) {
      local.emplace_back(std::min(x, y), std::max(x, y));
    };
    for (std::size_t i = 0; i < m; ++i) add(order[i], order[(i + 1) % m]);
    // Greedy matching among pairs not already on the cycle.
    std::set<std::pair<std::uint32_t, std::uint32_t>> present(local.begin(), local.end());
    std::vector<std::uint32_t> shuffled(order);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(m - i));
      std::swap(shuffled[i], shuffled[j]);
    }
    std::vector<char> used(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (used[shuffled[i]]) continue;
      for (std::size_t j = i + 1; j < m; ++j) {
        if (used[shuffled[j]]) continue;
        const auto key = std::minmax(shuffled[i], shuffled[j]);
        if (present.count({key.first, key.second})) continue;
        add(shuffled[i], shuffled[j]);
        present.insert({key.first, key.second});
        used[shuffled[i]] = used[shuffled[j]] = 1;
        break;
      }
    }
    auto block = BoundedDegreeGraph::from_edges(m, 3, local);
    bool certified = false;
    if (m <= kBruteForceCap) {
      certified = min_conductance_bruteforce(block).value() >= cfg.c_exp;
    } else {
      certified = eigensolve(block).eigenvalues[1] >= 2.0 * cfg.c_exp;
    }
    if (certified) {
      std::vector<std::pair<Vertex, Vertex>> out;
      out.reserve(local.size());
      for (const auto& [x, y] : local) {
        const Vertex u = verts[x], v = verts[y];
        out.emplace_back(std::min(u, v), std::max(u, v));
      }
      return out;
    }
  }
  throw ConstructionError("repair: degree-3 expander block failed certification");
}

}  // namespace

BoundedDegreeGraph repair_to_expander(const BoundedDegreeGraph& g, const VertexSet& a,
                                      double alpha, std::uint64_t seed,
                                      const FarnessConfig& cfg, RepairStats* stats) {
  const std::size_t n = g.vertex_count();
  const std::uint32_t d = g.degree_bound();
  if (d < 3) throw InputError("repair_to_expander: need d >= 3");
  if (!(alpha > 0) || alpha > cfg.c_exp / (150.0 * d)) {
    throw InputError("repair_to_expander: alpha must be in (0, c_exp/(150 d)]");
  }
  if (a.empty()) return g;
  if (a.size() > a_size_cap(n, cfg.epsilon)) {
    throw InputError("repair_to_expander: |A| exceeds ceil(eps*n/9)");
  }
  const auto construct = construct_s(g, a, cfg);
  const auto& pairs = construct.s.pairs;

  std::vector<char> in_a(n, 0);
  for (Vertex v : a.members()) in_a[v] = 1;

  std::set<std::pair<Vertex, Vertex>> edge_set;
  for (const auto& e : g.edges()) edge_set.insert(e);
  std::uint64_t deleted = 0;

  auto erase_edge = [&edge_set, &deleted](Vertex u, Vertex v) {
    const auto key = std::minmax(u, v);
    if (edge_set.erase({key.first, key.second}) > 0) ++deleted;
  };

  // Remove every edge incident to A, then the inside of each chosen pair.
  for (Vertex v : a.members()) {
    for (std::uint32_t i = 0; i < g.degree(v); ++i) erase_edge(v, g.neighbor(v, i));
  }
  for (const auto& [u, v] : pairs) {
    if (u != v) erase_edge(u, v);
  }

  std::uint64_t inserted = 0;
  auto insert_edge = [&edge_set, &inserted](Vertex u, Vertex v) {
    const auto key = std::minmax(u, v);
    if (edge_set.insert({key.first, key.second}).second) ++inserted;
  };

  // Rebuild A: H* plus the A'' slots that will be matched to the pairs.
  const std::vector<Vertex>& av = a.members();
  const std::size_t a_size = av.size();
  std::vector<Vertex> a_second;  // matched back to the pair slots
  if (a_size == 1) {
    a_second = {av[0]};
  } else {
    const std::size_t second_size = 2 * ((a_size + 3) / 4);
    bool expander_case = a_size >= 10;
    std::vector<std::pair<Vertex, Vertex>> base;
    if (expander_case) {
      a_second.assign(av.begin(), av.begin() + static_cast<std::ptrdiff_t>(second_size));
      std::vector<Vertex> a_prime(av.begin() + static_cast<std::ptrdiff_t>(second_size),
                                  av.end());
      base = expander_block_degree3(a_prime, seed, cfg);
      if (base.size() < a_second.size()) {
        expander_case = false;  // block too small to subdivide; fall back to a path
      } else {
        // Replace the first |A''| block edges by length-2 paths through A''.
        for (std::size_t i = 0; i < a_second.size(); ++i) {
          const auto [u, v] = base[i];
          insert_edge(u, a_second[i]);
          insert_edge(v, a_second[i]);
        }
        for (std::size_t i = a_second.size(); i < base.size(); ++i) {
          insert_edge(base[i].first, base[i].second);
        }
      }
    }
    if (!expander_case) {
      a_second.assign(av.begin(), av.begin() + static_cast<std::ptrdiff_t>(second_size));
      for (std::size_t i = 0; i + 1 < a_size; ++i) insert_edge(av[i], av[i + 1]);
    }
  }

  // Perfect matching between A'' and the pair slots (two slots per pair; a
  // self-pair exposes its vertex twice).
  if (a_size == 1) {
    const auto& [u, v] = pairs[0];
    insert_edge(u, a_second[0]);
    if (v != u) insert_edge(v, a_second[0]);
  } else {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      insert_edge(pairs[j].first, a_second[2 * j]);
      insert_edge(pairs[j].second, a_second[2 * j + 1]);
    }
  }

  const std::uint64_t budget = static_cast<std::uint64_t>(d + 4) * a_size;
  if (deleted + inserted > budget) {
    throw ConstructionError("repair_to_expander: edit budget (d+4)|A| exceeded");
  }
  if (stats) {
    stats->edges_deleted = deleted;
    stats->edges_inserted = inserted;
    stats->pair_count = pairs.size();
  }
  std::vector<std::pair<Vertex, Vertex>> edges(edge_set.begin(), edge_set.end());
  return BoundedDegreeGraph::from_edges(n, d, edges);
}

SparseCutResult sparse_cut_search(const BoundedDegreeGraph& g, CutMode mode) {
  if (mode == CutMode::exact) {
    auto [side, phi] = min_conductance_cut_bruteforce(g);
    return SparseCutResult{std::move(side), phi};
  }
  auto sweep = sweep_cut(g);
  return SparseCutResult{std::move(sweep.side), sweep.phi};
}

PartitionCertificate iterative_partition(const BoundedDegreeGraph& g, unsigned k,
                                         double epsilon, const FarnessConfig& cfg) {
  const std::size_t n = g.vertex_count();
  if (n > kEigensolveCap) {
    throw CapacityError("iterative_partition: n exceeds the eigensolve cap");
  }
  if (k == 0) throw InputError("iterative_partition: need k >= 1");
  std::vector<VertexSet> parts{VertexSet::full(n)};

  struct Split {
    Rational local_phi;  // conductance of the cut inside the part
    VertexSet side;      // parent-id vertices
    bool feasible = false;
  };
  auto best_split = [&](const VertexSet& part) {
    Split split;
    if (part.size() < 2) return split;
    const auto sub = induced_subgraph(g, part);
    const auto cut = sweep_cut(sub.graph);
    std::vector<Vertex> side;
    side.reserve(cut.side.size());
    for (Vertex local : cut.side.members()) side.push_back(sub.id_map[local]);
    split.local_phi = cut.phi;
    split.side = VertexSet(std::move(side), n);
    split.feasible = true;
    return split;
  };

  while (parts.size() < static_cast<std::size_t>(k) + 1) {
    std::size_t best_idx = parts.size();
    Split best;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      Split candidate = best_split(parts[i]);
      if (!candidate.feasible) continue;
      if (best_idx == parts.size() || candidate.local_phi < best.local_phi) {
        best = std::move(candidate);
        best_idx = i;
      }
    }
    if (best_idx == parts.size()) break;
    if (best.local_phi.value() > cfg.phi_budget) {
      break;  // every available split is too expensive; consistent with clusterability
    }
    // Replace the split part by its two sides.
    std::vector<Vertex> rest;
    for (Vertex v : parts[best_idx].members()) {
      if (!best.side.contains(v)) rest.push_back(v);
    }
    parts[best_idx] = best.side;
    parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(best_idx) + 1,
                 VertexSet(std::move(rest), n));
  }

  PartitionCertificate cert;
  cert.parts = parts;
  cert.min_part_size = n;
  std::uint64_t boundary_sum = 0;
  for (const auto& part : parts) {
    cert.phi.push_back(outer_conductance(g, part));
    cert.max_phi = std::max(cert.max_phi, cert.phi.back().value());
    cert.min_part_size = std::min(cert.min_part_size, part.size());
    boundary_sum += cut_size(g, part);
  }
  cert.cut_edge_total = boundary_sum / 2;
  cert.size_floor = epsilon * epsilon * static_cast<double>(n) / (1152.0 * k);
  cert.size_floor_ok =
      static_cast<double>(cert.min_part_size) >= cert.size_floor;
  cert.reached_k_plus_1 = parts.size() == static_cast<std::size_t>(k) + 1;
  return cert;
}

}  // namespace clustertest
