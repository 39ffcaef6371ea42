#pragma once

// Squared-Euclidean optimal transport between distributions on the real
// line. The one-dimensional problem is solved exactly by coupling quantiles
// in order, so the plan is sparse: at most n + m - 1 entries.

#include <cstddef>
#include <vector>

namespace rdc {

struct DiscreteDistribution {
  std::vector<double> support;
  std::vector<double> weights;
};

struct TransportEntry {
  std::size_t from = 0;
  std::size_t to = 0;
  double mass = 0.0;
};

struct TransportPlan {
  std::vector<TransportEntry> entries;
  double cost = 0.0;  // sum of mass * (x_from - y_to)^2

  // Dense coupling matrix, rows indexed by the source support; intended for
  // small instances and tests.
  std::vector<std::vector<double>> dense(std::size_t n_from,
                                         std::size_t n_to) const;
};

// Exact squared-distance optimal transport between two distributions on the
// line via the monotone quantile coupling. Both weight vectors must be
// nonnegative and sum to 1 within 1e-10; throws UnbalancedMasses otherwise.
TransportPlan w2_discrete(const DiscreteDistribution& a,
                          const DiscreteDistribution& b);

// Squared 2-Wasserstein distance between two univariate Gaussians:
// (mu1 - mu2)^2 + (sqrt(s2_1) - sqrt(s2_2))^2.
double w2_gaussian(double mu1, double s2_1, double mu2, double s2_2);

}  // namespace rdc
