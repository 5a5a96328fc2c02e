#include "clustertest/generators.hpp"

#include <algorithm>
#include <cmath>

#include "clustertest/errors.hpp"
#include "clustertest/rng.hpp"
#include "clustertest/spectral.hpp"

namespace clustertest {

std::vector<Rational> ClusterInstance::phi_outs() const {
  std::vector<Rational> out;
  out.reserve(design.per_part.size());
  for (const auto& p : design.per_part) out.push_back(p.phi_out);
  return out;
}

namespace {

bool adjacent(const std::vector<std::vector<Vertex>>& adj, Vertex u, Vertex v) {
  const auto& list = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
  const Vertex other = adj[u].size() <= adj[v].size() ? v : u;
  return std::find(list.begin(), list.end(), other) != list.end();
}

// One Steger-Wormald pass: match stubs uniformly among suitable pairs,
// declaring failure when only unsuitable pairs remain.
bool try_regular_edges(std::size_t m, std::uint32_t deg, Rng& rng,
                       std::vector<std::pair<Vertex, Vertex>>& edges) {
  edges.clear();
  std::vector<Vertex> stubs;
  stubs.reserve(m * deg);
  for (Vertex v = 0; v < m; ++v) {
    for (std::uint32_t i = 0; i < deg; ++i) stubs.push_back(v);
  }
  std::vector<std::vector<Vertex>> adj(m);
  auto remove_stub = [&stubs](std::size_t idx) {
    stubs[idx] = stubs.back();
    stubs.pop_back();
  };
  while (!stubs.empty()) {
    bool placed = false;
    for (unsigned tries = 0; tries < 64; ++tries) {
      const auto i = static_cast<std::size_t>(rng.below(stubs.size()));
      auto j = static_cast<std::size_t>(rng.below(stubs.size()));
      if (i == j) continue;
      const Vertex u = stubs[i], v = stubs[j];
      if (u == v || adjacent(adj, u, v)) continue;
      edges.emplace_back(std::min(u, v), std::max(u, v));
      adj[u].push_back(v);
      adj[v].push_back(u);
      remove_stub(std::max(i, j));
      remove_stub(std::min(i, j));
      placed = true;
      break;
    }
    if (placed) continue;
    // Rare near-exhaustion: check whether any suitable pair is left at all.
    bool any = false;
    for (std::size_t i = 0; i < stubs.size() && !any; ++i) {
      for (std::size_t j = i + 1; j < stubs.size() && !any; ++j) {
        if (stubs[i] != stubs[j] && !adjacent(adj, stubs[i], stubs[j])) any = true;
      }
    }
    if (!any) return false;
  }
  return true;
}

std::vector<std::pair<Vertex, Vertex>> random_regular_edges(std::size_t m, std::uint32_t deg,
                                                            std::uint64_t seed,
                                                            std::uint64_t salt) {
  if (deg == 0) return {};
  if (m * deg % 2 != 0) throw InputError("random regular graph: m*d must be even");
  if (m < deg + 1) throw InputError("random regular graph: need m >= d+1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (unsigned attempt = 0; attempt < 1000; ++attempt) {
    Rng rng = Rng::stream(seed, rng_purpose::kGenerator, salt, attempt);
    if (try_regular_edges(m, deg, rng, edges)) return edges;
  }
  throw ConstructionError("random regular graph: stub matching kept dead-ending");
}

// lambda2 of a standalone block, dense when small, power-method otherwise.
double block_lambda2(const BoundedDegreeGraph& g, std::uint64_t seed) {
  if (g.vertex_count() <= 800) {
    return eigensolve(g).eigenvalues[1];
  }
  return lambda2_estimate(g, 400, seed);
}

// Certified random regular block on its own degree bound.
BoundedDegreeGraph certified_regular_block(std::size_t m, std::uint32_t deg,
                                           std::uint64_t seed, std::uint64_t salt,
                                           const ExpanderConfig& cfg, double* lambda2_out) {
  for (unsigned retry = 0; retry < cfg.max_retries; ++retry) {
    auto edges = random_regular_edges(m, deg, seed, salt * 1000 + retry);
    auto g = BoundedDegreeGraph::from_edges(m, deg, edges);
    if (!cfg.certify || m <= deg + 1) {
      if (lambda2_out) *lambda2_out = 0.0;
      return g;
    }
    const double lambda2 = block_lambda2(g, seed ^ salt);
    if (lambda2 >= cfg.lambda2_floor) {
      if (lambda2_out) *lambda2_out = lambda2;
      return g;
    }
  }
  throw ConstructionError("expander block failed the lambda2 floor after retries");
}

}  // namespace

BoundedDegreeGraph random_regular_expander(std::size_t m, std::uint32_t d,
                                           std::uint64_t seed, const ExpanderConfig& cfg) {
  return certified_regular_block(m, d, seed, 0, cfg, nullptr);
}

ClusterInstance planted_clusterable(const std::vector<std::size_t>& sizes, std::uint32_t d,
                                    std::uint64_t cross_edges, std::uint64_t seed,
                                    const ExpanderConfig& cfg) {
  if (sizes.empty()) throw InputError("planted_clusterable: need at least one part");
  if (d < 2) throw InputError("planted_clusterable: need d >= 2");
  for (std::size_t size : sizes) {
    if (size < d + 1) throw InputError("planted_clusterable: each part needs size >= d+1");
  }
  if (sizes.size() == 1 && cross_edges > 0) {
    throw InputError("planted_clusterable: single part admits no cross edges");
  }
  const std::uint32_t part_deg = d - 1;
  std::size_t n = 0;
  for (std::size_t size : sizes) n += size;

  ClusterInstance inst;
  inst.seed = seed;
  inst.design.kind = "planted";
  inst.design.k = static_cast<unsigned>(sizes.size());
  inst.design.part_degree = part_deg;
  inst.design.cross_edges = cross_edges;
  inst.design.lambda2_floor = cfg.lambda2_floor;

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> offsets(sizes.size() + 1, 0);
  std::vector<double> lambda2(sizes.size(), 0.0);
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    offsets[p + 1] = offsets[p] + static_cast<Vertex>(sizes[p]);
    const auto block = certified_regular_block(sizes[p], part_deg, seed, p + 1, cfg,
                                               &lambda2[p]);
    for (const auto& [u, v] : block.edges()) {
      edges.emplace_back(offsets[p] + u, offsets[p] + v);
    }
    inst.parts.push_back(VertexSet::range(offsets[p], offsets[p + 1], n));
  }

  // One reserved slot per vertex; each cross edge takes one slot on each side
  // of a uniformly drawn part pair.
  std::vector<std::vector<Vertex>> free_slots(sizes.size());
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    free_slots[p].reserve(sizes[p]);
    for (Vertex v = offsets[p]; v < offsets[p + 1]; ++v) free_slots[p].push_back(v);
  }
  std::vector<std::uint64_t> cross_degree(sizes.size(), 0);
  Rng rng = Rng::stream(seed, rng_purpose::kGenerator, 0xc505, 0);
  const std::size_t h = sizes.size();
  for (std::uint64_t e = 0; e < cross_edges; ++e) {
    bool placed = false;
    for (unsigned tries = 0; tries < 1000 && !placed; ++tries) {
      const auto a = static_cast<std::size_t>(rng.below(h));
      auto b = static_cast<std::size_t>(rng.below(h - 1));
      if (b >= a) ++b;
      if (free_slots[a].empty() || free_slots[b].empty()) continue;
      auto take = [&rng](std::vector<Vertex>& pool) {
        const auto idx = static_cast<std::size_t>(rng.below(pool.size()));
        const Vertex v = pool[idx];
        pool[idx] = pool.back();
        pool.pop_back();
        return v;
      };
      const Vertex u = take(free_slots[a]);
      const Vertex v = take(free_slots[b]);
      edges.emplace_back(std::min(u, v), std::max(u, v));
      ++cross_degree[a];
      ++cross_degree[b];
      placed = true;
    }
    if (!placed) {
      throw InputError("planted_clusterable: cross_edges exceed available slots");
    }
  }

  inst.graph = BoundedDegreeGraph::from_edges(n, d, edges);
  for (std::size_t p = 0; p < h; ++p) {
    PartDesign pd;
    pd.cross_degree = cross_degree[p];
    pd.phi_out = Rational(static_cast<std::int64_t>(cross_degree[p]),
                          static_cast<std::int64_t>(d) *
                              static_cast<std::int64_t>(sizes[p]));
    pd.lambda2_in = lambda2[p] * part_deg / d;
    inst.design.per_part.push_back(pd);
  }
  return inst;
}

ClusterInstance far_instance_disjoint(unsigned k_plus, std::size_t size, std::uint32_t d,
                                      std::uint64_t seed, const ExpanderConfig& cfg) {
  if (k_plus < 2) throw InputError("far_instance_disjoint: need k_plus >= 2");
  const std::size_t n = static_cast<std::size_t>(k_plus) * size;
  ClusterInstance inst;
  inst.seed = seed;
  inst.design.kind = "disjoint";
  inst.design.k = k_plus;
  inst.design.part_degree = d;
  inst.design.cross_edges = 0;
  inst.design.lambda2_floor = cfg.lambda2_floor;

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (unsigned p = 0; p < k_plus; ++p) {
    double lambda2 = 0;
    const auto offset = static_cast<Vertex>(p * size);
    const auto block = certified_regular_block(size, d, seed, p + 1, cfg, &lambda2);
    for (const auto& [u, v] : block.edges()) {
      edges.emplace_back(offset + u, offset + v);
    }
    inst.parts.push_back(VertexSet::range(offset, offset + static_cast<Vertex>(size), n));
    PartDesign pd;
    pd.cross_degree = 0;
    pd.phi_out = Rational(0, 1);
    pd.lambda2_in = lambda2;
    inst.design.per_part.push_back(pd);
  }
  inst.graph = BoundedDegreeGraph::from_edges(n, d, edges);
  return inst;
}

ClusterInstance dumbbell(std::size_t half, std::uint32_t d, std::uint64_t cut_edges,
                         std::uint64_t seed, const ExpanderConfig& cfg) {
  if (d < 2) throw InputError("dumbbell: need d >= 2");
  if (cut_edges > half) throw InputError("dumbbell: cut_edges must be <= half");
  // phi_out = cut/(d*half) <= 1/(4d)  <=>  4*cut <= half
  if (4 * cut_edges > half) {
    throw InputError("dumbbell: cut_edges violate phi_out <= 1/(4d)");
  }
  const std::size_t n = 2 * half;
  ClusterInstance inst;
  inst.seed = seed;
  inst.design.kind = "dumbbell";
  inst.design.k = 2;
  inst.design.part_degree = d - 1;
  inst.design.cross_edges = cut_edges;
  inst.design.lambda2_floor = cfg.lambda2_floor;

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<double> lambda2(2, 0.0);
  for (std::size_t p = 0; p < 2; ++p) {
    const auto offset = static_cast<Vertex>(p * half);
    const auto block = certified_regular_block(half, d - 1, seed, p + 1, cfg, &lambda2[p]);
    for (const auto& [u, v] : block.edges()) {
      edges.emplace_back(offset + u, offset + v);
    }
    inst.parts.push_back(VertexSet::range(offset, offset + static_cast<Vertex>(half), n));
  }
  // Vertex-disjoint cross edges on seeded distinct endpoints.
  Rng rng = Rng::stream(seed, rng_purpose::kGenerator, 0xd0bb, 0);
  auto pick_distinct = [&rng, half](Vertex offset, std::uint64_t count) {
    std::vector<Vertex> pool(half);
    for (std::size_t i = 0; i < half; ++i) pool[i] = offset + static_cast<Vertex>(i);
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
  };
  const auto left = pick_distinct(0, cut_edges);
  const auto right = pick_distinct(static_cast<Vertex>(half), cut_edges);
  for (std::uint64_t i = 0; i < cut_edges; ++i) {
    edges.emplace_back(left[i], right[i]);
  }
  inst.graph = BoundedDegreeGraph::from_edges(n, d, edges);
  for (std::size_t p = 0; p < 2; ++p) {
    PartDesign pd;
    pd.cross_degree = cut_edges;
    pd.phi_out = Rational(static_cast<std::int64_t>(cut_edges),
                          static_cast<std::int64_t>(d) * static_cast<std::int64_t>(half));
    pd.lambda2_in = lambda2[p] * (d - 1) / d;
    inst.design.per_part.push_back(pd);
  }
  return inst;
}

BoundedDegreeGraph low_conductance_family(LowConductanceKind kind, std::size_t n) {
  if (n < 3) throw InputError("low_conductance_family: need n >= 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::uint32_t d = 2;
  switch (kind) {
    case LowConductanceKind::path:
      for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      break;
    case LowConductanceKind::cycle:
      for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      edges.emplace_back(0, static_cast<Vertex>(n - 1));
      break;
    case LowConductanceKind::grid: {
      const auto rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
      const std::size_t cols = (n + rows - 1) / rows;
      for (std::size_t v = 0; v < n; ++v) {
        const std::size_t r = v / cols, c = v % cols;
        if (c + 1 < cols && v + 1 < n && (v + 1) / cols == r) {
          edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v + 1));
        }
        if (v + cols < n) {
          edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v + cols));
        }
      }
      d = 4;
      break;
    }
  }
  return BoundedDegreeGraph::from_edges(n, d, edges);
}

}  // namespace clustertest
