#include "clustertest/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "clustertest/errors.hpp"

namespace clustertest {

VertexSet::VertexSet(std::vector<Vertex> members, std::size_t n)
    : members_(std::move(members)), n_(n) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= n_) {
    throw InputError("VertexSet: member id out of range");
  }
}

VertexSet VertexSet::full(std::size_t n) {
  std::vector<Vertex> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Vertex>(i);
  return VertexSet(std::move(all), n);
}

VertexSet VertexSet::range(Vertex begin, Vertex end, std::size_t n) {
  std::vector<Vertex> m;
  m.reserve(end - begin);
  for (Vertex v = begin; v < end; ++v) m.push_back(v);
  return VertexSet(std::move(m), n);
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::complement() const {
  std::vector<Vertex> out;
  out.reserve(n_ - members_.size());
  std::size_t j = 0;
  for (Vertex v = 0; v < n_; ++v) {
    if (j < members_.size() && members_[j] == v) {
      ++j;
    } else {
      out.push_back(v);
    }
  }
  return VertexSet(std::move(out), n_);
}

BoundedDegreeGraph BoundedDegreeGraph::from_edges(
    std::size_t n, std::uint32_t d, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (n == 0) throw InputError("graph: n must be >= 1");
  if (d == 0) throw InputError("graph: degree bound must be >= 1");
  std::vector<std::uint32_t> deg(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("graph: edge endpoint out of range");
    if (u == v) throw InputError("graph: self-loops are not allowed");
    ++deg[u];
    ++deg[v];
  }
  BoundedDegreeGraph g;
  g.n_ = n;
  g.d_ = d;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (deg[v] > d) {
      throw InputError("graph: vertex " + std::to_string(v) + " exceeds degree bound");
    }
    g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  }
  g.neighbors_.resize(2 * edges.size());
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto begin = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto end = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(begin, end);
    if (std::adjacent_find(begin, end) != end) {
      throw InputError("graph: multi-edge at vertex " + std::to_string(v));
    }
  }
  return g;
}

bool BoundedDegreeGraph::has_edge(Vertex u, Vertex v) const {
  const auto begin = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
  const auto end = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
  return std::binary_search(begin, end, v);
}

std::vector<std::pair<Vertex, Vertex>> BoundedDegreeGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < n_; ++v) {
    for (std::uint32_t i = 0; i < degree(v); ++i) {
      const Vertex u = neighbor(v, i);
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

std::optional<Vertex> neighbor_query(const BoundedDegreeGraph& g, Vertex v, std::uint32_t i) {
  if (v >= g.vertex_count()) throw InputError("neighbor_query: vertex out of range");
  if (i >= g.degree(v)) return std::nullopt;
  return g.neighbor(v, i);
}

std::uint64_t cut_size(const BoundedDegreeGraph& g, const VertexSet& s) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : s.members()) in[v] = 1;
  std::uint64_t cut = 0;
  for (Vertex v : s.members()) {
    for (std::uint32_t i = 0; i < g.degree(v); ++i) {
      if (!in[g.neighbor(v, i)]) ++cut;
    }
  }
  return cut;
}

Rational outer_conductance(const BoundedDegreeGraph& g, const VertexSet& s) {
  if (s.empty()) throw InputError("outer_conductance: empty set");
  if (s.size() == g.vertex_count()) return Rational(0, 1);
  const std::uint64_t cut = cut_size(g, s);
  return Rational(static_cast<std::int64_t>(cut),
                  static_cast<std::int64_t>(g.degree_bound()) *
                      static_cast<std::int64_t>(s.size()));
}

namespace {

// Gray-code walk over all subsets; the cut is updated in O(d) per flip.
// visit(mask, popcount, cut) is called for every nonempty proper subset.
template <typename Visit>
void enumerate_cuts(const BoundedDegreeGraph& g, Visit visit) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t mask = 0;
  std::int64_t cut = 0;
  int pop = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(i));
    const Vertex v = static_cast<Vertex>(bit);
    const bool entering = ((mask >> bit) & 1) == 0;
    std::int64_t delta = 0;
    for (std::uint32_t j = 0; j < g.degree(v); ++j) {
      const Vertex u = g.neighbor(v, j);
      delta += ((mask >> u) & 1) ? -1 : +1;
    }
    if (entering) {
      mask |= (std::uint64_t{1} << bit);
      cut += delta;
      ++pop;
    } else {
      mask &= ~(std::uint64_t{1} << bit);
      cut -= delta;
      --pop;
    }
    if (mask != 0 && static_cast<std::size_t>(pop) < n) {
      visit(mask, pop, cut);
    }
  }
}

}  // namespace

std::pair<VertexSet, Rational> min_conductance_cut_bruteforce(const BoundedDegreeGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kBruteForceCap) {
    throw CapacityError(
        "min_conductance_bruteforce: n > 24; use the spectral bounds instead");
  }
  if (n == 1) {
    return {VertexSet({0}, 1), Rational(1, g.degree_bound())};
  }
  const std::int64_t d = g.degree_bound();
  std::uint64_t best_mask = 1;
  Rational best(static_cast<std::int64_t>(g.degree(0)), d);
  enumerate_cuts(g, [&](std::uint64_t mask, int pop, std::int64_t cut) {
    if (static_cast<std::size_t>(2 * pop) > n) return;
    const Rational phi(cut, d * pop);
    if (phi < best) {
      best = phi;
      best_mask = mask;
    }
  });
  std::vector<Vertex> members;
  for (std::size_t v = 0; v < n; ++v) {
    if ((best_mask >> v) & 1) members.push_back(static_cast<Vertex>(v));
  }
  return {VertexSet(std::move(members), n), best};
}

Rational min_conductance_bruteforce(const BoundedDegreeGraph& g) {
  return min_conductance_cut_bruteforce(g).second;
}

InducedSubgraph induced_subgraph(const BoundedDegreeGraph& g, const VertexSet& s) {
  if (s.empty()) throw InputError("induced_subgraph: empty set");
  std::vector<Vertex> inv(g.vertex_count(), static_cast<Vertex>(-1));
  const auto& mem = s.members();
  for (std::size_t i = 0; i < mem.size(); ++i) inv[mem[i]] = static_cast<Vertex>(i);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v : mem) {
    for (std::uint32_t i = 0; i < g.degree(v); ++i) {
      const Vertex u = g.neighbor(v, i);
      if (v < u && inv[u] != static_cast<Vertex>(-1)) {
        edges.emplace_back(inv[v], inv[u]);
      }
    }
  }
  InducedSubgraph out{BoundedDegreeGraph::from_edges(mem.size(), g.degree_bound(), edges),
                      mem};
  return out;
}

Rational inner_conductance(const BoundedDegreeGraph& g, const VertexSet& s) {
  const auto sub = induced_subgraph(g, s);
  return min_conductance_bruteforce(sub.graph);
}

BoundedDegreeGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  std::uint32_t d = 0;
  if (!std::getline(in, line)) throw InputError("edge list: missing header line");
  {
    std::istringstream hs(line);
    if (!(hs >> n >> d)) throw InputError("edge list: header must be 'n d'");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream es(line);
    std::uint64_t u = 0, v = 0;
    if (!(es >> u >> v)) {
      throw InputError("edge list: malformed line " + std::to_string(lineno));
    }
    if (!(u < v && v < n)) {
      throw InputError("edge list: line " + std::to_string(lineno) +
                       " requires 0 <= u < v < n");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return BoundedDegreeGraph::from_edges(n, d, edges);
}

BoundedDegreeGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list: " + path);
  return read_edge_list(in);
}

void write_edge_list(const BoundedDegreeGraph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.degree_bound() << '\n';
  for (const auto& [u, v] : g.edges()) {
    out << u << ' ' << v << '\n';
  }
}

void save_edge_list(const BoundedDegreeGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write edge list: " + path);
  write_edge_list(g, out);
}

std::size_t component_count(const BoundedDegreeGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack;
  std::size_t components = 0;
  for (Vertex start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++components;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (std::uint32_t i = 0; i < g.degree(v); ++i) {
        const Vertex u = g.neighbor(v, i);
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return components;
}

}  // namespace clustertest
