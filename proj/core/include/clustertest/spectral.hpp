#pragma once

#include <cstdint>
#include <vector>

#include "clustertest/graph.hpp"
#include "clustertest/rational.hpp"

namespace clustertest {

inline constexpr std::size_t kEigensolveCap = 4000;
inline constexpr std::size_t kRhoBruteForceCap = 12;

// Full spectrum of the normalized Laplacian of the regularized view,
// L = (D - A)/d, whose lazy-walk operator is W = I - L/2. Eigenvalues are
// ascending in [0, 2]; eigenvectors are orthonormal, stored column-major.
struct SpectralReport {
  std::size_t n = 0;
  std::vector<double> eigenvalues;
  std::vector<double> vectors;  // vec(i, u) = vectors[i * n + u]
  double max_eigen_residual = 0.0;
  double max_orthonormality_residual = 0.0;

  double vec(std::size_t i, std::size_t u) const { return vectors[i * n + u]; }
  std::size_t zero_eigenvalue_multiplicity(double tol = 1e-8) const;
};

SpectralReport eigensolve(const BoundedDegreeGraph& g);

// Residuals of the basic spectral identities at a vertex u and length t:
// the indicator expansion 1_u = sum_i v_i(u) v_i, the row norm
// sum_i v_i(u)^2 = 1, and the eigendecomposed walk distribution against the
// iterated exact one.
struct SpectralFactResiduals {
  double indicator_expansion = 0.0;  // ||1_u - sum_i v_i(u) v_i||_2
  double row_norm = 0.0;             // |sum_i v_i(u)^2 - 1|
  double walk_max_diff = 0.0;        // max-entry gap to exact_distribution
};
SpectralFactResiduals verify_spectral_facts(const BoundedDegreeGraph& g,
                                            const SpectralReport& report, Vertex u,
                                            std::uint32_t t);

// Cheeger sandwich lambda2/2 <= phi(G) <= sqrt(2 lambda2). Exact phi when
// n <= kBruteForceCap; otherwise the sweep-cut upper bound stands in.
struct CheegerCheck {
  double lambda2 = 0.0;
  bool exact_phi = false;
  double phi = 0.0;  // exact phi(G), or the sweep-cut conductance
  bool holds = false;
};
CheegerCheck cheeger_check(const BoundedDegreeGraph& g);

// rho_G(k): minimum over k disjoint nonempty subsets of the maximum outer
// conductance. Exhaustive subset DP; n <= kRhoBruteForceCap.
Rational rho_k_bruteforce(const BoundedDegreeGraph& g, unsigned k);

// Best threshold cut of the second eigenvector; conductance uses the smaller
// side. Guaranteed phi <= sqrt(2 lambda2).
struct SweepCut {
  VertexSet side;
  Rational phi;
  double lambda2 = 0.0;
};
SweepCut sweep_cut(const BoundedDegreeGraph& g);

// Deflated power-method estimate of lambda2 for graphs past the dense cap.
double lambda2_estimate(const BoundedDegreeGraph& g, std::uint32_t max_iters = 400,
                        std::uint64_t seed = 1);

// lambda_i <= 2 phi_out for i <= h (asserted direction of the eigenvalue
// bound) plus the reported gap above h.
struct EigengapReport {
  std::size_t h = 0;
  double lambda_h = 0.0;
  double lambda_h_plus_1 = 0.0;
  double gap_ratio = 0.0;  // lambda_{h+1} / max(lambda_h, 1e-12)
  double max_phi_out = 0.0;
  bool holds = false;
};
EigengapReport eigengap_report(const SpectralReport& report,
                               const std::vector<Rational>& part_phi_out);

// Spread of eigenvector i over C: (1/|C|) sum over ordered pairs u,v in C of
// (v_i(u) - v_i(v))^2, computed as 2 sum_u (v_i(u) - mean)^2.
double eigenvector_spread(const SpectralReport& report, const VertexSet& c, std::size_t i);

// Exact-distance audits of the within-cluster / small-norm / cross-cut
// bounds on a graph with known parts.
struct AuditConfig {
  double alpha = 1.0 / (24.0 * 51.0);  // C-tilde / norm audits; 1/(24 s)
  double alpha_cross = 0.25;           // high-remain sets for the cross floor
  unsigned k = 0;                      // cluster budget; 0 = number of parts
  std::size_t max_vertices_per_part = 60;
  std::uint64_t seed = 7;
};

struct PartDistanceAudit {
  std::size_t part = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t pairs_within_bound = 0;  // dist^2 <= 1/(4n)
  double ctilde_fraction = 0.0;
};

struct CrossDistanceAudit {
  std::size_t part_a = 0;
  std::size_t part_b = 0;
  bool window_ok = false;  // t <= alpha_cross / (2 max(phi_out))
  std::uint64_t pairs_checked = 0;
  std::uint64_t pairs_above_floor = 0;  // dist^2 >= 1/n
  double ahat_fraction_a = 0.0;
  double ahat_fraction_b = 0.0;
};

struct NormAudit {
  std::uint64_t vertices_checked = 0;
  std::uint64_t vertices_within_bound = 0;  // ||p||^2 <= 2k/(alpha n)
  double bound = 0.0;
};

struct DistanceAuditTable {
  std::uint32_t t = 0;
  double xi = 0.0;  // 1/(4n)
  std::vector<PartDistanceAudit> parts;
  std::vector<CrossDistanceAudit> cross;
  NormAudit norms;
};

DistanceAuditTable within_cluster_distance_audit(const BoundedDegreeGraph& g,
                                                 const std::vector<VertexSet>& parts,
                                                 const std::vector<Rational>& part_phi_out,
                                                 std::uint32_t t,
                                                 const AuditConfig& cfg = {});

}  // namespace clustertest
