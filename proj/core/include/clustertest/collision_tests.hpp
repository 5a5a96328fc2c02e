#pragma once

#include <cstdint>
#include <vector>

#include "clustertest/random_walk.hpp"

namespace clustertest {

// Outcome of a threshold test. A statistic exactly at the threshold rejects.
struct TesterVerdict {
  bool accepted = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::uint64_t r = 0;
};

// Z = sum_i C(count_i, 2), the number of pairwise self-collisions.
std::uint64_t collision_count(const SampleCounts& c);

// Unbiased estimator Z / C(r,2) of ||p||_2^2.
double l2_norm_estimate(const SampleCounts& c);

// Accepts iff Z < (1/2) C(r,2) sigma. Guarantees, for r >= 16 sqrt(n):
// accepts when ||p||_2^2 <= sigma/4 and rejects when > sigma, each with
// probability at least 1 - 16 sqrt(n)/r.
TesterVerdict l2_norm_test(const SampleCounts& c, double sigma);

// Unbiased collision estimator of ||p - q||_2^2 from one batch per side:
// T = (sum_i C(X_i,2) + C(Y_i,2)) / C(r,2) - 2 (sum_i X_i Y_i) / r^2.
double l2_distance_estimate(const SampleCounts& cp, const SampleCounts& cq);

// Number of batches used to reach confidence 1 - delta by median boosting.
std::uint64_t closeness_batches(double delta);

// Median-of-batches verdict: accept iff median estimate < 5 xi / 2 (the
// midpoint of the [xi, 4 xi] promise gap).
TesterVerdict closeness_verdict_from_estimates(const std::vector<double>& estimates,
                                               double xi, std::uint64_t r);

// Accepts when ||p-q||_2^2 <= xi and rejects when >= 4 xi, each with
// probability at least 1 - delta, given closeness_batches(delta) batches of
// r samples per distribution with r >= closeness_c * sqrt(b)/xi,
// b >= max ||.||_2^2.
TesterVerdict l2_closeness_test(const std::vector<SampleCounts>& cp_list,
                                const std::vector<SampleCounts>& cq_list, double xi,
                                double delta);

}  // namespace clustertest
