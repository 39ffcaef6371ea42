#pragma once

// Independent reference computations for tests. Everything here is written
// against textbook definitions, deliberately sharing no code with the library
// under test: an alternating-minimization rate-distortion solver for finite
// alphabets and the closed-form binary symmetric distortion-rate inverse.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracles {

inline double binary_entropy_nats(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
  return h;
}

// Distortion of the binary-symmetric source under Hamming loss at rate R
// nats: the unique d in [0, 1/2] with ln 2 - H_b(d) = R.
inline double binary_shannon_distortion(double rate_nats) {
  const double ln2 = std::log(2.0);
  if (rate_nats <= 0.0) return 0.5;
  if (rate_nats >= ln2) return 0.0;
  const double target = ln2 - rate_nats;  // H_b(d) sought, in (0, ln 2)
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy_nats(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Standard normal quantile by bisecting the CDF; plenty for building
// equal-mass quantile grids in tests.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// One alternating-minimization pass at fixed trade-off slope beta: returns
// the (distortion, rate) point where the rate-distortion curve has tangent
// slope -beta. q is the source marginal, delta[i][a] the distortion of
// reproducing letter i as a.
struct SlopePoint {
  double d = 0.0;
  double r = 0.0;
};

inline SlopePoint rate_distortion_at_slope(const std::vector<double>& q,
                                           const std::vector<std::vector<double>>& delta,
                                           double beta) {
  const std::size_t n = q.size();
  const std::size_t k = delta.at(0).size();
  std::vector<std::vector<double>> a(n, std::vector<double>(k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = std::exp(-beta * delta[i][j]);

  std::vector<double> r(k, 1.0 / static_cast<double>(k));
  std::vector<double> c(n, 0.0);
  SlopePoint prev{std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  for (int it = 0; it < 50000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double ci = 0.0;
      for (std::size_t j = 0; j < k; ++j) ci += r[j] * a[i][j];
      c[i] = ci;
    }
    std::vector<double> next(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += q[i] * a[i][j] / c[i];
      next[j] = r[j] * s;
    }
    r.swap(next);

    SlopePoint cur{0.0, 0.0};
    double log_c_term = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ci = 0.0;
      for (std::size_t j = 0; j < k; ++j) ci += r[j] * a[i][j];
      for (std::size_t j = 0; j < k; ++j)
        cur.d += q[i] * r[j] * a[i][j] / ci * delta[i][j];
      log_c_term -= q[i] * std::log(ci);
    }
    cur.r = std::max(0.0, log_c_term - beta * cur.d);
    if (std::abs(cur.d - prev.d) < 1e-14 && std::abs(cur.r - prev.r) < 1e-14)
      return cur;
    prev = cur;
  }
  return prev;
}

// Rate of the finite-alphabet rate-distortion function at distortion budget
// d_target, by bisecting the slope parameter and applying the tangent-line
// correction (the curve's slope at the converged point is exactly -beta).
inline double rate_at_distortion(const std::vector<double>& q,
                                 const std::vector<std::vector<double>>& delta,
                                 double d_target) {
  const std::size_t n = q.size();
  const std::size_t k = delta.at(0).size();

  double zero_rate_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    double dj = 0.0;
    for (std::size_t i = 0; i < n; ++i) dj += q[i] * delta[i][j];
    zero_rate_d = std::min(zero_rate_d, dj);
  }
  if (d_target >= zero_rate_d - 1e-15) return 0.0;

  double floor_d = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    floor_d += q[i] * *std::min_element(delta[i].begin(), delta[i].end());
  if (d_target < floor_d - 1e-12)
    throw std::invalid_argument("rate_at_distortion: target below the distortion floor");

  double beta_lo = 0.0, beta_hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    if (rate_distortion_at_slope(q, delta, beta_hi).d <= d_target) break;
    beta_lo = beta_hi;
    beta_hi *= 2.0;
  }
  SlopePoint pt{};
  double beta = beta_hi;
  for (int it = 0; it < 200; ++it) {
    beta = 0.5 * (beta_lo + beta_hi);
    pt = rate_distortion_at_slope(q, delta, beta);
    (pt.d > d_target ? beta_lo : beta_hi) = beta;
  }
  return std::max(0.0, pt.r + beta * (pt.d - d_target));
}

}  // namespace oracles
