#include "clustertest/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "clustertest/errors.hpp"
#include "clustertest/random_walk.hpp"
#include "clustertest/rng.hpp"

namespace clustertest {

namespace {

Eigen::MatrixXd laplacian_dense(const BoundedDegreeGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  const double inv_d = 1.0 / g.degree_bound();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    m(v, v) = g.degree(v) * inv_d;
    for (std::uint32_t i = 0; i < g.degree(v); ++i) {
      m(v, g.neighbor(v, i)) = -inv_d;
    }
  }
  return m;
}

}  // namespace

std::size_t SpectralReport::zero_eigenvalue_multiplicity(double tol) const {
  std::size_t count = 0;
  for (double lambda : eigenvalues) {
    if (lambda <= tol) ++count;
  }
  return count;
}

SpectralReport eigensolve(const BoundedDegreeGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kEigensolveCap) {
    throw CapacityError("eigensolve: n exceeds the dense symmetric solve cap");
  }
  const Eigen::MatrixXd lap = laplacian_dense(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) {
    throw ConstructionError("eigensolve: dense symmetric solver failed");
  }
  SpectralReport report;
  report.n = n;
  report.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  report.vectors.resize(n * n);
  const Eigen::MatrixXd& vecs = solver.eigenvectors();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t u = 0; u < n; ++u) {
      report.vectors[i * n + u] = vecs(static_cast<Eigen::Index>(u),
                                       static_cast<Eigen::Index>(i));
    }
  }
  const Eigen::MatrixXd residual =
      lap * vecs - vecs * solver.eigenvalues().asDiagonal();
  report.max_eigen_residual = residual.colwise().norm().maxCoeff();
  const Eigen::MatrixXd gram = vecs.transpose() * vecs -
                               Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                         static_cast<Eigen::Index>(n));
  report.max_orthonormality_residual = gram.cwiseAbs().maxCoeff();
  return report;
}

SpectralFactResiduals verify_spectral_facts(const BoundedDegreeGraph& g,
                                            const SpectralReport& report, Vertex u,
                                            std::uint32_t t) {
  const std::size_t n = report.n;
  if (u >= n) throw InputError("verify_spectral_facts: vertex out of range");
  SpectralFactResiduals out;

  double row_norm = 0.0;
  std::vector<double> indicator(n, 0.0);
  std::vector<double> walk(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double coeff = report.vec(i, u);
    row_norm += coeff * coeff;
    const double decay = std::pow(1.0 - report.eigenvalues[i] / 2.0, t);
    for (std::size_t w = 0; w < n; ++w) {
      indicator[w] += coeff * report.vec(i, w);
      walk[w] += coeff * decay * report.vec(i, w);
    }
  }
  out.row_norm = std::abs(row_norm - 1.0);

  double sq = 0.0;
  for (std::size_t w = 0; w < n; ++w) {
    const double diff = indicator[w] - (w == u ? 1.0 : 0.0);
    sq += diff * diff;
  }
  out.indicator_expansion = std::sqrt(sq);

  const WalkDistribution exact = exact_distribution(g, u, t);
  double max_diff = 0.0;
  for (std::size_t w = 0; w < n; ++w) {
    max_diff = std::max(max_diff, std::abs(walk[w] - exact.probs[w]));
  }
  out.walk_max_diff = max_diff;
  return out;
}

CheegerCheck cheeger_check(const BoundedDegreeGraph& g) {
  CheegerCheck out;
  const std::size_t n = g.vertex_count();
  if (n == 1) {
    // Singleton convention phi = 1/d; the sandwich is vacuous.
    out.lambda2 = 0.0;
    out.exact_phi = true;
    out.phi = 1.0 / g.degree_bound();
    out.holds = true;
    return out;
  }
  const SpectralReport report = eigensolve(g);
  out.lambda2 = report.eigenvalues[1];
  constexpr double tol = 1e-10;
  if (n <= kBruteForceCap) {
    out.exact_phi = true;
    out.phi = min_conductance_bruteforce(g).value();
    out.holds = (out.lambda2 / 2.0 <= out.phi + tol) &&
                (out.phi <= std::sqrt(std::max(0.0, 2.0 * out.lambda2)) + tol);
  } else {
    out.exact_phi = false;
    out.phi = sweep_cut(g).phi.value();
    out.holds = (out.lambda2 / 2.0 <= out.phi + tol) &&
                (out.phi <= std::sqrt(std::max(0.0, 2.0 * out.lambda2)) + tol);
  }
  return out;
}

Rational rho_k_bruteforce(const BoundedDegreeGraph& g, unsigned k) {
  const std::size_t n = g.vertex_count();
  if (n > kRhoBruteForceCap) {
    throw CapacityError("rho_k_bruteforce: n exceeds the partition enumeration cap");
  }
  if (k < 1 || k > n) throw InputError("rho_k_bruteforce: need 1 <= k <= n");
  const std::size_t total = std::size_t{1} << n;
  const std::int64_t d = g.degree_bound();

  // phi for every nonempty subset.
  std::vector<Rational> phi(total, Rational(0, 1));
  for (std::size_t mask = 1; mask < total; ++mask) {
    std::int64_t cut = 0;
    int pop = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!((mask >> v) & 1)) continue;
      ++pop;
      for (std::uint32_t i = 0; i < g.degree(static_cast<Vertex>(v)); ++i) {
        if (!((mask >> g.neighbor(static_cast<Vertex>(v), i)) & 1)) ++cut;
      }
    }
    phi[mask] = Rational(cut, d * pop);
  }

  const Rational inf(std::int64_t{1} << 40, 1);
  // best1[mask] = min phi(S) over nonempty S within mask.
  std::vector<Rational> best(total, inf);
  for (std::size_t mask = 1; mask < total; ++mask) {
    Rational b = phi[mask];
    for (std::size_t v = 0; v < n; ++v) {
      if ((mask >> v) & 1) {
        const Rational& sub = best[mask & ~(std::size_t{1} << v)];
        if (sub < b) b = sub;
      }
    }
    best[mask] = b;
  }
  for (unsigned level = 2; level <= k; ++level) {
    std::vector<Rational> next(total, inf);
    for (std::size_t mask = 1; mask < total; ++mask) {
      Rational b = inf;
      // Enumerate nonempty submasks as the newest set.
      for (std::size_t s = mask; s != 0; s = (s - 1) & mask) {
        const Rational& rest = best[mask ^ s];
        if (!(rest < inf)) continue;
        const Rational worst = phi[s] < rest ? rest : phi[s];
        if (worst < b) b = worst;
      }
      next[mask] = b;
    }
    best.swap(next);
  }
  return best[total - 1];
}

SweepCut sweep_cut(const BoundedDegreeGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw InputError("sweep_cut: need at least 2 vertices");
  const SpectralReport report = eigensolve(g);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    const double va = report.vec(1, a), vb = report.vec(1, b);
    if (va != vb) return va < vb;
    return a < b;
  });

  std::vector<char> in_prefix(n, 0);
  std::int64_t cut = 0;
  const std::int64_t d = g.degree_bound();
  Rational best_phi(std::int64_t{1} << 40, 1);
  std::size_t best_prefix = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vertex v = order[i];
    std::int64_t inside = 0;
    for (std::uint32_t j = 0; j < g.degree(v); ++j) {
      if (in_prefix[g.neighbor(v, j)]) ++inside;
    }
    cut += static_cast<std::int64_t>(g.degree(v)) - 2 * inside;
    in_prefix[v] = 1;
    const std::size_t size = i + 1;
    const std::size_t small = std::min(size, n - size);
    const Rational phi(cut, d * static_cast<std::int64_t>(small));
    if (phi < best_phi) {
      best_phi = phi;
      best_prefix = size;
    }
  }
  const bool prefix_is_small = best_prefix <= n - best_prefix;
  std::vector<Vertex> side;
  if (prefix_is_small) {
    side.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_prefix));
  } else {
    side.assign(order.begin() + static_cast<std::ptrdiff_t>(best_prefix), order.end());
  }
  return SweepCut{VertexSet(std::move(side), n), best_phi, report.eigenvalues[1]};
}

double lambda2_estimate(const BoundedDegreeGraph& g, std::uint32_t max_iters,
                        std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (n < 2) return 0.0;
  Rng rng = Rng::stream(seed, rng_purpose::kGeneric, 0xe57, 0);
  std::vector<double> x(n), y(n);
  for (auto& e : x) e = rng.unit() - 0.5;
  const double half_inv_d = 1.0 / (2.0 * g.degree_bound());
  auto orthonormalize = [&](std::vector<double>& v) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    double norm = 0.0;
    for (auto& e : v) {
      e -= mean;
      norm += e * e;
    }
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (auto& e : v) e /= norm;
    }
    return norm;
  };
  orthonormalize(x);
  double rayleigh = 0.0;
  for (std::uint32_t it = 0; it < max_iters; ++it) {
    for (Vertex v = 0; v < n; ++v) {
      double acc = x[v] * (1.0 - g.degree(v) * half_inv_d);
      for (std::uint32_t i = 0; i < g.degree(v); ++i) {
        acc += x[g.neighbor(v, i)] * half_inv_d;
      }
      y[v] = acc;
    }
    double dot = 0.0;
    for (std::size_t v = 0; v < n; ++v) dot += x[v] * y[v];
    x.swap(y);
    orthonormalize(x);
    if (it > 16 && std::abs(dot - rayleigh) < 1e-10) {
      rayleigh = dot;
      break;
    }
    rayleigh = dot;
  }
  return 2.0 * (1.0 - rayleigh);
}

EigengapReport eigengap_report(const SpectralReport& report,
                               const std::vector<Rational>& part_phi_out) {
  if (part_phi_out.empty()) throw InputError("eigengap_report: no parts");
  EigengapReport out;
  out.h = part_phi_out.size();
  if (out.h > report.n) throw InputError("eigengap_report: more parts than vertices");
  for (const auto& phi : part_phi_out) {
    out.max_phi_out = std::max(out.max_phi_out, phi.value());
  }
  out.lambda_h = report.eigenvalues[out.h - 1];
  out.lambda_h_plus_1 = out.h < report.n ? report.eigenvalues[out.h] : 2.0;
  out.gap_ratio = out.lambda_h_plus_1 / std::max(out.lambda_h, 1e-12);
  out.holds = true;
  constexpr double tol = 1e-8;
  for (std::size_t i = 0; i < out.h; ++i) {
    if (report.eigenvalues[i] > 2.0 * out.max_phi_out + tol) {
      out.holds = false;
    }
  }
  return out;
}

double eigenvector_spread(const SpectralReport& report, const VertexSet& c, std::size_t i) {
  if (c.empty()) throw InputError("eigenvector_spread: empty set");
  double mean = 0.0;
  for (Vertex u : c.members()) mean += report.vec(i, u);
  mean /= static_cast<double>(c.size());
  double sum = 0.0;
  for (Vertex u : c.members()) {
    const double diff = report.vec(i, u) - mean;
    sum += diff * diff;
  }
  return 2.0 * sum;
}

namespace {

std::vector<Vertex> audit_sample(const VertexSet& part, std::size_t cap, Rng& rng) {
  const auto& mem = part.members();
  if (mem.size() <= cap) return mem;
  // Seeded Fisher-Yates prefix.
  std::vector<Vertex> pool(mem);
  for (std::size_t i = 0; i < cap; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(cap);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

DistanceAuditTable within_cluster_distance_audit(const BoundedDegreeGraph& g,
                                                 const std::vector<VertexSet>& parts,
                                                 const std::vector<Rational>& part_phi_out,
                                                 std::uint32_t t, const AuditConfig& cfg) {
  if (parts.empty()) throw InputError("distance audit: no parts");
  if (parts.size() != part_phi_out.size()) {
    throw InputError("distance audit: parts and phi_out sizes differ");
  }
  const std::size_t n = g.vertex_count();
  if (n > kExactDistributionCap) {
    throw CapacityError("distance audit: n exceeds the exact-distribution cap");
  }
  DistanceAuditTable table;
  table.t = t;
  table.xi = 1.0 / (4.0 * static_cast<double>(n));
  const unsigned k = cfg.k == 0 ? static_cast<unsigned>(parts.size()) : cfg.k;

  Rng rng = Rng::stream(cfg.seed, rng_purpose::kGeneric, 0xa0d17, 0);
  std::vector<std::vector<Vertex>> samples;
  samples.reserve(parts.size());
  for (const auto& part : parts) {
    samples.push_back(audit_sample(part, cfg.max_vertices_per_part, rng));
  }

  // Exact distributions for every audited vertex.
  std::vector<std::vector<WalkDistribution>> dists(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    dists[p].reserve(samples[p].size());
    for (Vertex v : samples[p]) dists[p].push_back(exact_distribution(g, v, t));
  }

  // Within-part pairwise distances and the C-tilde density.
  for (std::size_t p = 0; p < parts.size(); ++p) {
    PartDistanceAudit audit;
    audit.part = p;
    const auto& vs = samples[p];
    std::vector<char> all_ok(vs.size(), 1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        const double dist = l2_distance_squared(dists[p][i], dists[p][j]);
        ++audit.pairs_checked;
        if (dist <= table.xi) {
          ++audit.pairs_within_bound;
        } else {
          all_ok[i] = all_ok[j] = 0;
        }
      }
    }
    if (!vs.empty()) {
      const auto good = static_cast<double>(std::count(all_ok.begin(), all_ok.end(), 1));
      audit.ctilde_fraction = good / static_cast<double>(vs.size());
    }
    table.parts.push_back(audit);
  }

  // Cross-part floor for high-remain endpoints, inside the t <= alpha/(2 psi) window.
  const double floor = 1.0 / static_cast<double>(n);
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      CrossDistanceAudit audit;
      audit.part_a = a;
      audit.part_b = b;
      const double psi = std::max(part_phi_out[a].value(), part_phi_out[b].value());
      audit.window_ok = psi == 0.0 || t <= cfg.alpha_cross / (2.0 * psi);
      if (audit.window_ok) {
        // Tiny slack absorbs float accumulation when the exact answer is 1.
        const double remain_floor = 1.0 - t * psi / (2.0 * cfg.alpha_cross) - 1e-9;
        auto high_remain = [&](std::size_t p, std::vector<char>& flags) {
          flags.assign(samples[p].size(), 0);
          std::size_t count = 0;
          for (std::size_t i = 0; i < samples[p].size(); ++i) {
            if (remain_probability(g, samples[p][i], parts[p], t) >= remain_floor) {
              flags[i] = 1;
              ++count;
            }
          }
          return samples[p].empty()
                     ? 0.0
                     : static_cast<double>(count) / static_cast<double>(samples[p].size());
        };
        std::vector<char> in_a, in_b;
        audit.ahat_fraction_a = high_remain(a, in_a);
        audit.ahat_fraction_b = high_remain(b, in_b);
        for (std::size_t i = 0; i < samples[a].size(); ++i) {
          if (!in_a[i]) continue;
          for (std::size_t j = 0; j < samples[b].size(); ++j) {
            if (!in_b[j]) continue;
            ++audit.pairs_checked;
            if (l2_distance_squared(dists[a][i], dists[b][j]) >= floor) {
              ++audit.pairs_above_floor;
            }
          }
        }
      }
      table.cross.push_back(audit);
    }
  }

  // Norm bound ||p_u^t||^2 <= 2k/(alpha n) over all audited vertices.
  table.norms.bound = 2.0 * k / (cfg.alpha * static_cast<double>(n));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (const auto& dist : dists[p]) {
      ++table.norms.vertices_checked;
      if (dist.l2_norm_squared() <= table.norms.bound) {
        ++table.norms.vertices_within_bound;
      }
    }
  }
  return table;
}

}  // namespace clustertest
