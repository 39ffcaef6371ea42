#include "rdc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "rdc/errors.hpp"

namespace rdc {

namespace {

constexpr double kMassTol = 1e-10;

std::vector<std::size_t> sorted_order(const DiscreteDistribution& d,
                                      const char* side) {
  if (d.support.size() != d.weights.size())
    throw ConfigError(std::string("w2_discrete: ") + side +
                      " support and weights differ in length");
  if (d.support.empty())
    throw ConfigError(std::string("w2_discrete: ") + side + " is empty");
  double total = 0.0;
  for (double w : d.weights) {
    if (w < 0.0)
      throw ConfigError(std::string("w2_discrete: ") + side +
                        " has a negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTol) {
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "w2_discrete: %s weights sum to %.17g, not 1", side, total);
    throw UnbalancedMasses(buf);
  }
  std::vector<std::size_t> order(d.support.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return d.support[i] < d.support[j];
  });
  return order;
}

}  // namespace

std::vector<std::vector<double>> TransportPlan::dense(std::size_t n_from,
                                                      std::size_t n_to) const {
  std::vector<std::vector<double>> m(n_from, std::vector<double>(n_to, 0.0));
  for (const TransportEntry& e : entries) m.at(e.from).at(e.to) += e.mass;
  return m;
}

TransportPlan w2_discrete(const DiscreteDistribution& a,
                          const DiscreteDistribution& b) {
  const std::vector<std::size_t> oa = sorted_order(a, "first argument");
  const std::vector<std::size_t> ob = sorted_order(b, "second argument");

  TransportPlan plan;
  std::size_t i = 0;
  std::size_t j = 0;
  double ra = a.weights[oa[0]];
  double rb = b.weights[ob[0]];
  while (i < oa.size() && j < ob.size()) {
    const double m = std::min(ra, rb);
    if (m > 0.0) {
      const double dx = a.support[oa[i]] - b.support[ob[j]];
      plan.entries.push_back({oa[i], ob[j], m});
      plan.cost += m * dx * dx;
    }
    ra -= m;
    rb -= m;
    // Advance every exhausted side; with equal residuals both move.
    if (ra <= 0.0 && ++i < oa.size()) ra = a.weights[oa[i]];
    if (rb <= 0.0 && ++j < ob.size()) rb = b.weights[ob[j]];
  }
  return plan;
}

double w2_gaussian(double mu1, double s2_1, double mu2, double s2_2) {
  if (s2_1 < 0.0 || s2_2 < 0.0)
    throw NegativeVariance("w2_gaussian: variances must be nonnegative");
  const double dm = mu1 - mu2;
  const double ds = std::sqrt(s2_1) - std::sqrt(s2_2);
  return dm * dm + ds * ds;
}

}  // namespace rdc
