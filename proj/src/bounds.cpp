#include "rdc/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "rdc/errors.hpp"
#include "rdc/rng.hpp"

namespace rdc {

namespace {

// Compensated accumulator for long nonuniform sums.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

PosteriorSamplingResult posterior_sampling_check_discrete(
    const std::vector<std::vector<double>>& joint,
    const std::vector<double>& values) {
  const std::size_t n = joint.size();
  if (n == 0 || values.size() != n)
    throw InvalidJoint(
        "posterior_sampling_check_discrete: joint rows must match values");
  const std::size_t n_m = joint[0].size();
  if (n_m == 0)
    throw InvalidJoint("posterior_sampling_check_discrete: no representation "
                       "letters");
  double total = 0.0;
  for (const std::vector<double>& row : joint) {
    if (row.size() != n_m)
      throw InvalidJoint("posterior_sampling_check_discrete: ragged joint");
    for (double v : row) {
      if (v < 0.0)
        throw InvalidJoint(
            "posterior_sampling_check_discrete: negative probability");
      total += v;
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "posterior_sampling_check_discrete: joint sums to %.17g",
                  total);
    throw InvalidJoint(buf);
  }

  PosteriorSamplingResult out;
  KahanSum d_min, d_ps;
  std::vector<double> p_xhat(n, 0.0);
  for (std::size_t m = 0; m < n_m; ++m) {
    double p_m = 0.0;
    for (std::size_t i = 0; i < n; ++i) p_m += joint[i][m];
    if (p_m <= 0.0) continue;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += joint[i][m] * values[i];
    mean /= p_m;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = values[i] - mean;
      d_min.add(joint[i][m] * diff * diff);
    }
    // Sampling draws X and Xhat independently from the same posterior, so
    // the joint given M = m factorizes.
    for (std::size_t i = 0; i < n; ++i) {
      if (joint[i][m] <= 0.0) continue;
      p_xhat[i] += (joint[i][m] / p_m) * p_m;
      for (std::size_t j = 0; j < n; ++j) {
        const double diff = values[i] - values[j];
        d_ps.add(joint[i][m] * joint[j][m] / p_m * diff * diff);
      }
    }
  }
  out.d_min = d_min.sum;
  out.d_ps = d_ps.sum;
  out.ratio = out.d_min > 0.0 ? out.d_ps / out.d_min
                              : std::numeric_limits<double>::quiet_NaN();
  out.psnr_drop_db = 10.0 * std::log10(out.ratio);
  out.se = 0.0;
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p_x = 0.0;
    for (std::size_t m = 0; m < n_m; ++m) p_x += joint[i][m];
    gap = std::max(gap, std::abs(p_xhat[i] - p_x));
  }
  out.marginal_gap = gap;
  return out;
}

PosteriorSamplingResult posterior_sampling_check_gaussian(const GaussianPair& p,
                                                          double R,
                                                          std::size_t n_samples,
                                                          std::uint64_t seed) {
  validate_gaussian(p);
  if (!(R > 0.0))
    throw NegativeRate("posterior_sampling_check_gaussian: rate must be > 0");
  if (n_samples < 100000)
    throw ConfigError(
        "posterior_sampling_check_gaussian: need at least 100000 samples");

  const double d = p.sigma2_x * std::exp(-2.0 * R);
  const double s_u = std::sqrt(p.sigma2_x - d);
  const double s_v = std::sqrt(d);

  GaussianSampler rng(seed);
  KahanSum sum, sum_sq;
  for (std::size_t t = 0; t < n_samples; ++t) {
    const double u = p.mu_x + s_u * rng.normal();
    const double x = u + s_v * rng.normal();
    const double xhat = u + s_v * rng.normal();
    const double err = (x - xhat) * (x - xhat);
    sum.add(err);
    sum_sq.add(err * err);
  }
  const double nd = static_cast<double>(n_samples);
  PosteriorSamplingResult out;
  out.d_min = d;
  out.d_ps = sum.sum / nd;
  const double var = std::max(0.0, sum_sq.sum / nd - out.d_ps * out.d_ps);
  out.se = std::sqrt(var / nd);
  out.ratio = out.d_ps / out.d_min;
  out.psnr_drop_db = 10.0 * std::log10(out.ratio);
  out.marginal_gap = 0.0;
  return out;
}

}  // namespace rdc
