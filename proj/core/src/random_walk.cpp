#include "clustertest/random_walk.hpp"

#include <algorithm>
#include <cmath>

#include "clustertest/errors.hpp"

namespace clustertest {

double WalkDistribution::l2_norm_squared() const {
  double s = 0;
  for (double p : probs) s += p * p;
  return s;
}

double l2_distance_squared(const WalkDistribution& p, const WalkDistribution& q) {
  double s = 0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    const double diff = p.probs[i] - q.probs[i];
    s += diff * diff;
  }
  return s;
}

Vertex walk_step(const BoundedDegreeGraph& g, Vertex v, Rng& rng, std::uint64_t* queries) {
  // Slot i < d is edge slot i, probed with one oracle query; slots in [d, 2d)
  // are explicit stays. A probed slot past the degree is also a stay, which
  // realizes the 1 - deg(v)/(2d) holding probability exactly.
  const std::uint32_t d = g.degree_bound();
  const auto slot = static_cast<std::uint32_t>(rng.below(2ull * d));
  if (slot >= d) return v;
  if (queries) ++*queries;
  if (slot >= g.degree(v)) return v;
  return g.neighbor(v, slot);
}

Vertex sample_endpoint(const BoundedDegreeGraph& g, Vertex v, std::uint32_t t, Rng& rng,
                       std::uint64_t* queries) {
  if (v >= g.vertex_count()) throw InputError("sample_endpoint: vertex out of range");
  Vertex cur = v;
  for (std::uint32_t i = 0; i < t; ++i) cur = walk_step(g, cur, rng, queries);
  return cur;
}

SampleCounts sample_counts(const BoundedDegreeGraph& g, Vertex v, std::uint32_t t,
                           std::uint64_t r, const WalkStreamKey& key,
                           std::uint64_t* queries) {
  if (r < 1) throw InputError("sample_counts: r must be >= 1");
  std::vector<Vertex> endpoints;
  endpoints.reserve(r);
  for (std::uint64_t j = 0; j < r; ++j) {
    Rng rng = Rng::stream(key.seed, key.a, key.b, key.walk_base + j);
    endpoints.push_back(sample_endpoint(g, v, t, rng, queries));
  }
  std::sort(endpoints.begin(), endpoints.end());
  SampleCounts out;
  out.r = r;
  out.origin = v;
  out.t = t;
  for (std::size_t i = 0; i < endpoints.size();) {
    std::size_t j = i;
    while (j < endpoints.size() && endpoints[j] == endpoints[i]) ++j;
    out.counts.emplace_back(endpoints[i], static_cast<std::uint32_t>(j - i));
    i = j;
  }
  return out;
}

SampleCounts sample_counts(const BoundedDegreeGraph& g, Vertex v, std::uint32_t t,
                           std::uint64_t r, std::uint64_t seed, std::uint64_t* queries) {
  return sample_counts(g, v, t, r, WalkStreamKey{seed, rng_purpose::kGeneric, v, 0},
                       queries);
}

namespace {

// One application of the lazy-walk operator W (symmetric, entries 1/(2d) per
// edge, 1 - deg/(2d) on the diagonal).
void apply_walk_operator(const BoundedDegreeGraph& g, const std::vector<double>& x,
                         std::vector<double>& y) {
  const double half_inv_d = 1.0 / (2.0 * g.degree_bound());
  const std::size_t n = g.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    double acc = x[v] * (1.0 - g.degree(v) * half_inv_d);
    for (std::uint32_t i = 0; i < g.degree(v); ++i) {
      acc += x[g.neighbor(v, i)] * half_inv_d;
    }
    y[v] = acc;
  }
}

}  // namespace

WalkDistribution exact_distribution(const BoundedDegreeGraph& g, Vertex v, std::uint32_t t) {
  const std::size_t n = g.vertex_count();
  if (n > kExactDistributionCap) {
    throw CapacityError("exact_distribution: n exceeds the dense-vector cap");
  }
  if (v >= n) throw InputError("exact_distribution: vertex out of range");
  WalkDistribution out;
  out.t = t;
  out.origin = v;
  out.probs.assign(n, 0.0);
  out.probs[v] = 1.0;
  std::vector<double> scratch(n, 0.0);
  for (std::uint32_t step = 0; step < t; ++step) {
    apply_walk_operator(g, out.probs, scratch);
    out.probs.swap(scratch);
  }
  return out;
}

double remain_probability(const BoundedDegreeGraph& g, Vertex v, const VertexSet& a,
                          std::uint32_t t) {
  if (g.vertex_count() > kExactDistributionCap) {
    throw CapacityError("remain_probability: n exceeds the dense-vector cap");
  }
  if (!a.contains(v)) throw InputError("remain_probability: v must lie in A");
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex u : a.members()) in[u] = 1;
  std::vector<double> x(g.vertex_count(), 0.0), y(g.vertex_count(), 0.0);
  x[v] = 1.0;
  for (std::uint32_t step = 0; step < t; ++step) {
    apply_walk_operator(g, x, y);
    for (std::size_t u = 0; u < y.size(); ++u) {
      if (!in[u]) y[u] = 0.0;
    }
    x.swap(y);
  }
  double mass = 0;
  for (Vertex u : a.members()) mass += x[u];
  return mass;
}

double mean_remain_probability(const BoundedDegreeGraph& g, const VertexSet& a,
                               std::uint32_t t) {
  if (g.vertex_count() > kExactDistributionCap) {
    throw CapacityError("mean_remain_probability: n exceeds the dense-vector cap");
  }
  if (a.empty()) throw InputError("mean_remain_probability: empty set");
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex u : a.members()) in[u] = 1;
  const double unit = 1.0 / static_cast<double>(a.size());
  std::vector<double> x(g.vertex_count(), 0.0), y(g.vertex_count(), 0.0);
  for (Vertex u : a.members()) x[u] = unit;
  for (std::uint32_t step = 0; step < t; ++step) {
    apply_walk_operator(g, x, y);
    for (std::size_t u = 0; u < y.size(); ++u) {
      if (!in[u]) y[u] = 0.0;
    }
    x.swap(y);
  }
  double mass = 0;
  for (Vertex u : a.members()) mass += x[u];
  return mass;
}

}  // namespace clustertest
