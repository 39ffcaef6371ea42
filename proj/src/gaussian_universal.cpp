#include "rdc/gaussian_universal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rdc/gaussian_rdc.hpp"
#include "rdc/rng.hpp"

namespace rdc {

namespace {

double decoder_scale(const UniversalDecoder& dec, const GaussianRepresentation& z) {
  return dec.gamma * std::sqrt(z.sigma2_z);
}

// Correlation-scale product A = sigma_x * |rho_xz|: the covariance of X with a
// unit-variance version of Z, and the scale at which the decoder reproduces
// the fixed-rate Shannon optimum.
double shannon_scale(const GaussianPair& p, const GaussianRepresentation& z) {
  return std::sqrt(p.sigma2_x) * std::abs(z.rho_xz);
}

}  // namespace

GaussianRepresentation build_representation(const GaussianPair& p, double R) {
  validate_gaussian(p);
  if (R < 0.0) throw NegativeRate("build_representation: rate must be nonnegative");
  GaussianRepresentation z;
  z.mu_z = 0.0;
  z.sigma2_z = 1.0;
  z.rho_xz = std::sqrt(-std::expm1(-2.0 * R));
  z.rate = R;
  return z;
}

UniversalDecoder decoder_for(const GaussianPair& p, const GaussianRepresentation& z,
                             double D, double C) {
  validate_gaussian(p);
  const double v_floor = min_reconstruction_variance(p, C);  // checks C feasibility
  const double a = shannon_scale(p, z);

  double s;
  if (C < case_boundary(p, z.rate)) {
    // The classification floor exceeds the fixed-rate Shannon variance, so the
    // floor itself is the only admissible scale meeting C.
    s = std::sqrt(v_floor);
  } else {
    // Any scale in the distortion interval [s_lo, s_hi] meets D; take the
    // smallest one that still satisfies the classification floor.
    const double disc = a * a - p.sigma2_x + D;
    if (disc < -1e-12) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "decoder_for: distortion target %.17g below the fixed-rate floor %.17g",
                    D, p.sigma2_x - a * a);
      throw InfeasiblePair(buf);
    }
    const double s_lo = a - std::sqrt(std::max(disc, 0.0));
    s = std::max(std::sqrt(v_floor), s_lo);
  }

  const double achieved = p.sigma2_x + s * s - 2.0 * s * a;
  if (achieved > D + 1e-9) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "decoder_for: target (D=%.17g, C=%.17g) below the rate-%.17g boundary", D,
                  C, z.rate);
    throw InfeasiblePair(buf);
  }

  UniversalDecoder dec;
  dec.gamma = s / std::sqrt(z.sigma2_z);
  dec.sign = z.rho_xz >= 0.0 ? 1 : -1;
  dec.mu_z = z.mu_z;
  dec.mu_x = p.mu_x;
  dec.target_d = D;
  dec.target_c = C;
  return dec;
}

double achieved_distortion(const GaussianPair& p, const GaussianRepresentation& z,
                           const UniversalDecoder& dec) {
  const double s = decoder_scale(dec, z);
  return p.sigma2_x + s * s - 2.0 * s * shannon_scale(p, z);
}

double achieved_class_loss(const GaussianPair& p, const UniversalDecoder& dec,
                           const GaussianRepresentation& z) {
  const double s = decoder_scale(dec, z);
  return variance_rule_class_loss(p, s * s);
}

double plugin_class_loss_limit(const GaussianPair& p, const GaussianRepresentation& z,
                               const UniversalDecoder& dec) {
  if (dec.gamma == 0.0) return p.label_entropy();
  return case_boundary(p, z.rate);
}

NoPenaltyReport verify_no_penalty(const GaussianPair& p, const std::vector<double>& rates,
                                  int points_per_rate) {
  validate_gaussian(p);
  if (rates.empty()) throw ConfigError("verify_no_penalty: need at least one rate");
  const double r_max = *std::max_element(rates.begin(), rates.end());
  const GaussianRepresentation z = build_representation(p, r_max);

  NoPenaltyReport report;
  report.checks.reserve(rates.size() * static_cast<std::size_t>(points_per_rate));
  for (double r : rates) {
    const TradeoffCurve curve = sample_dcr_curve(p, r, points_per_rate);
    for (const TradeoffPoint& pt : curve.points) {
      const UniversalDecoder dec = decoder_for(p, z, pt.d, pt.c);
      DecoderCheck check;
      check.rate = r;
      check.target_d = pt.d;
      check.target_c = pt.c;
      check.achieved_d = achieved_distortion(p, z, dec);
      check.achieved_c = achieved_class_loss(p, dec, z);
      check.gamma = dec.gamma;
      report.max_d_violation =
          std::max(report.max_d_violation, check.achieved_d - check.target_d);
      report.max_c_violation =
          std::max(report.max_c_violation, check.achieved_c - check.target_c);
      report.checks.push_back(check);
    }
  }
  return report;
}

MonteCarloEstimate monte_carlo_check(const GaussianPair& p, const UniversalDecoder& dec,
                                     const GaussianRepresentation& z,
                                     std::size_t n_samples, std::uint64_t seed) {
  validate_gaussian(p);
  if (n_samples < 10000) {
    throw ConfigError("monte_carlo_check: need at least 1e4 samples");
  }

  const double sigma_x = std::sqrt(p.sigma2_x);
  const double sigma_z = std::sqrt(z.sigma2_z);
  const double cov_xz = z.rho_xz * sigma_x * sigma_z;
  const double cov_sz = p.theta1 / sigma_x * z.rho_xz * sigma_z;  // label-X-Z chain
  const TrivariateGaussian joint({p.mu_x, p.mu_s, z.mu_z},
                                 {{{p.sigma2_x, p.theta1, cov_xz},
                                   {p.theta1, p.sigma2_s, cov_sz},
                                   {cov_xz, cov_sz, z.sigma2_z}}});

  GaussianSampler rng(seed);
  double err_sum = 0.0, err_comp = 0.0;
  double s_sum = 0.0, xh_sum = 0.0;
  double ss_sum = 0.0, xhxh_sum = 0.0, sxh_sum = 0.0;
  auto kahan_add = [](double& sum, double& comp, double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };

  const double n = static_cast<double>(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const auto [x, s, zv] = joint.sample(rng);
    const double xhat = dec.sign * dec.gamma * (zv - dec.mu_z) + dec.mu_x;
    const double err = x - xhat;
    kahan_add(err_sum, err_comp, err * err);
    s_sum += s;
    xh_sum += xhat;
    ss_sum += s * s;
    xhxh_sum += xhat * xhat;
    sxh_sum += s * xhat;
  }

  MonteCarloEstimate est;
  est.d_hat = err_sum / n;

  const double var_s = ss_sum / n - (s_sum / n) * (s_sum / n);
  const double var_xh = xhxh_sum / n - (xh_sum / n) * (xh_sum / n);
  const double cov_sxh = sxh_sum / n - (s_sum / n) * (xh_sum / n);
  const double h = p.label_entropy();
  if (var_s <= 0.0 || var_xh <= 0.0) {
    est.c_hat = h;  // constant reconstruction: the plug-in degenerates to h_S
  } else {
    const double rho2 = std::min(1.0, cov_sxh * cov_sxh / (var_s * var_xh));
    est.c_hat = h + 0.5 * std::log1p(-rho2);
  }
  return est;
}

}  // namespace rdc
