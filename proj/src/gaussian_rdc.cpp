#include "rdc/gaussian_rdc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace rdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - e^{-2R}, accurate for small R.
double one_minus_exp_neg2(double r) { return -std::expm1(-2.0 * r); }

std::string gaussian_digest(const GaussianPair& p, const char* axis, double fixed,
                            int num_points) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "gaussian mu_x=%.17g sigma2_x=%.17g mu_s=%.17g sigma2_s=%.17g "
                "theta1=%.17g %s=%.17g points=%d",
                p.mu_x, p.sigma2_x, p.mu_s, p.sigma2_s, p.theta1, axis, fixed,
                num_points);
  return buf;
}

void require_feasible_class(const GaussianPair& p, double c) {
  const double c_feas = feasibility_threshold(p);
  if (c < c_feas) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "classification budget %.17g below feasibility threshold %.17g", c,
                  c_feas);
    throw InfeasibleClassification(buf);
  }
}

}  // namespace

double min_reconstruction_variance(const GaussianPair& p, double C) {
  validate_gaussian(p);
  require_feasible_class(p, C);
  const double h = p.label_entropy();
  if (C >= h) return 0.0;
  // C < h implies rho != 0 here, since rho = 0 forces the threshold up to h.
  const double shortfall = -std::expm1(2.0 * (C - h));  // 1 - e^{2C - 2h} in (0, rho^2]
  return p.sigma2_s * p.sigma2_x * p.sigma2_x * shortfall / (p.theta1 * p.theta1);
}

double case_boundary(const GaussianPair& p, double R) {
  validate_gaussian(p);
  if (R < 0.0) throw NegativeRate("case_boundary: rate must be nonnegative");
  const double rho = p.correlation();
  const double arg = -rho * rho * one_minus_exp_neg2(R);
  if (arg <= -1.0) return -kInf;
  return p.label_entropy() + 0.5 * std::log1p(arg);
}

double variance_rule_class_loss(const GaussianPair& p, double sigma2_xhat) {
  validate_gaussian(p);
  const double ratio =
      p.theta1 * p.theta1 * sigma2_xhat / (p.sigma2_s * p.sigma2_x * p.sigma2_x);
  if (ratio >= 1.0) return -kInf;
  return p.label_entropy() + 0.5 * std::log1p(-ratio);
}

GaussianOptimum rate_of(const GaussianPair& p, double D, double C) {
  validate_gaussian(p);
  if (!(D > 0.0)) throw NonPositiveDistortion("rate_of: distortion budget must be positive");
  require_feasible_class(p, C);

  const double h = p.label_entropy();
  const double v_min = min_reconstruction_variance(p, C);

  GaussianOptimum opt;
  if (D <= p.sigma2_x - v_min) {
    // Distortion budget binds; classification is satisfiable alongside it.
    opt.sigma2_xhat = p.sigma2_x - D;
    opt.theta2 = opt.sigma2_xhat;
    opt.rate = 0.5 * std::log(p.sigma2_x / D);
    opt.distortion = D;
    opt.class_loss = variance_rule_class_loss(p, opt.sigma2_xhat);
    opt.case_label = CaseLabel::DistortionActive;
  } else if (C < h) {
    // Classification binds: the reconstruction variance floor exceeds what the
    // distortion budget alone would require.
    const double rho = p.correlation();
    const double shortfall = -std::expm1(2.0 * (C - h));
    const double arg = 1.0 - shortfall / (rho * rho);
    opt.sigma2_xhat = v_min;
    opt.theta2 = v_min;
    opt.rate = arg > 0.0 ? -0.5 * std::log(arg) : kInf;
    opt.distortion = p.sigma2_x - v_min;
    opt.class_loss = variance_rule_class_loss(p, v_min);
    opt.case_label = CaseLabel::ClassificationActive;
  } else {
    // Both budgets are slack; the constant reconstruction at the mean works.
    opt.sigma2_xhat = 0.0;
    opt.theta2 = 0.0;
    opt.rate = 0.0;
    opt.distortion = p.sigma2_x;
    opt.class_loss = h;
    opt.case_label = CaseLabel::BothInactive;
  }
  return opt;
}

GaussianOptimum distortion_of(const GaussianPair& p, double C, double R) {
  validate_gaussian(p);
  if (R < 0.0) throw NegativeRate("distortion_of: rate budget must be nonnegative");
  require_feasible_class(p, C);

  const double h = p.label_entropy();
  const double u2 = one_minus_exp_neg2(R);  // 1 - e^{-2R}

  GaussianOptimum opt;
  if (R == 0.0 && C >= h) {
    opt.sigma2_xhat = 0.0;
    opt.theta2 = 0.0;
    opt.rate = 0.0;
    opt.distortion = p.sigma2_x;
    opt.class_loss = h;
    opt.case_label = CaseLabel::BothInactive;
    return opt;
  }

  if (C >= case_boundary(p, R)) {
    // Rate budget binds; the rate-R Shannon channel already classifies well
    // enough.
    opt.sigma2_xhat = p.sigma2_x * u2;
    opt.theta2 = opt.sigma2_xhat;
    opt.rate = R;
    opt.distortion = p.sigma2_x * std::exp(-2.0 * R);
    opt.class_loss = variance_rule_class_loss(p, opt.sigma2_xhat);
    opt.case_label = CaseLabel::DistortionActive;
  } else {
    // Classification binds: inflate the reconstruction variance to the floor
    // and spend the whole rate budget on correlation.
    const double v_min = min_reconstruction_variance(p, C);
    const double s = std::sqrt(v_min);
    const double u = std::sqrt(u2);
    opt.sigma2_xhat = v_min;
    opt.theta2 = s * std::sqrt(p.sigma2_x) * u;
    opt.rate = R;
    opt.distortion = p.sigma2_x + v_min - 2.0 * s * std::sqrt(p.sigma2_x) * u;
    opt.class_loss = variance_rule_class_loss(p, v_min);
    opt.case_label = CaseLabel::ClassificationActive;
  }
  return opt;
}

TradeoffCurve sample_dcr_curve(const GaussianPair& p, double R, int num_points) {
  validate_gaussian(p);
  if (num_points < 2) throw ConfigError("sample_dcr_curve: need at least 2 points");
  const double c_feas = feasibility_threshold(p);
  if (!std::isfinite(c_feas)) {
    throw ConfigError("sample_dcr_curve: |rho| = 1 makes the sweep range unbounded");
  }
  const double h = p.label_entropy();
  const double c_hi = h + 0.25 * (h - c_feas);

  TradeoffCurve curve;
  curve.sweep_axis = SweepAxis::C;
  curve.params_digest = gaussian_digest(p, "rate", R, num_points);
  curve.points.reserve(static_cast<std::size_t>(num_points));
  for (int i = 0; i < num_points; ++i) {
    const double c = c_feas + (c_hi - c_feas) * static_cast<double>(i) /
                                  static_cast<double>(num_points - 1);
    const GaussianOptimum opt = distortion_of(p, c, R);
    curve.points.push_back(TradeoffPoint{opt.distortion, c, opt.rate, opt.case_label});
  }
  curve.validate();
  return curve;
}

TradeoffCurve sample_rdc_curve(const GaussianPair& p, double C, double d_lo, double d_hi,
                               int num_points) {
  validate_gaussian(p);
  if (num_points < 2) throw ConfigError("sample_rdc_curve: need at least 2 points");
  if (!(d_lo > 0.0) || !(d_hi >= d_lo)) {
    throw ConfigError("sample_rdc_curve: need 0 < d_lo <= d_hi");
  }

  TradeoffCurve curve;
  curve.sweep_axis = SweepAxis::D;
  curve.params_digest = gaussian_digest(p, "classification", C, num_points);
  curve.points.reserve(static_cast<std::size_t>(num_points));
  for (int i = 0; i < num_points; ++i) {
    const double d = d_lo + (d_hi - d_lo) * static_cast<double>(i) /
                                static_cast<double>(num_points - 1);
    const GaussianOptimum opt = rate_of(p, d, C);
    curve.points.push_back(TradeoffPoint{d, C, opt.rate, opt.case_label});
  }
  curve.validate();
  return curve;
}

namespace {

struct OracleBox {
  double s_lo, s_hi;  // sigma_xhat range
  double f_lo, f_hi;  // theta2 / (sigma_x * sigma_xhat) range
};

struct OracleBest {
  double value = kInf;
  double s = 0.0;
  double f = 0.0;
  bool found = false;
};

// Shared grid scan for both oracles. objective(s, f) is minimized over
// feasible(s, f) grid points; the f = theta2/(sigma_x*sigma_xhat) coordinate
// is meaningless at s = 0, where callers special-case the constant channel.
template <typename Feasible, typename Objective>
void scan_box(const OracleBox& box, int grid, const Feasible& feasible,
              const Objective& objective, OracleBest& best) {
  for (int i = 0; i <= grid; ++i) {
    const double s = box.s_lo + (box.s_hi - box.s_lo) * static_cast<double>(i) /
                                    static_cast<double>(grid);
    if (s <= 0.0) continue;
    for (int j = 0; j <= grid; ++j) {
      const double f = box.f_lo + (box.f_hi - box.f_lo) * static_cast<double>(j) /
                                      static_cast<double>(grid);
      if (f < 0.0 || f > 1.0) continue;
      if (!feasible(s, f)) continue;
      const double val = objective(s, f);
      if (val < best.value) {
        best.value = val;
        best.s = s;
        best.f = f;
        best.found = true;
      }
    }
  }
}

template <typename Feasible, typename Objective>
OracleBest refine_search(double s_max, int grid, int refine_rounds,
                         const Feasible& feasible, const Objective& objective) {
  OracleBest best;
  OracleBox box{0.0, s_max, 0.0, 1.0};
  double s_step = s_max / grid;
  double f_step = 1.0 / grid;
  scan_box(box, grid, feasible, objective, best);
  if (!best.found) return best;
  for (int round = 0; round < refine_rounds; ++round) {
    box.s_lo = std::max(0.0, best.s - 3.0 * s_step);
    box.s_hi = std::min(s_max, best.s + 3.0 * s_step);
    box.f_lo = std::max(0.0, best.f - 3.0 * f_step);
    box.f_hi = std::min(1.0, best.f + 3.0 * f_step);
    s_step = (box.s_hi - box.s_lo) / grid;
    f_step = (box.f_hi - box.f_lo) / grid;
    scan_box(box, grid, feasible, objective, best);
  }
  return best;
}

}  // namespace

double numeric_oracle(const GaussianPair& p, double C, double R, int grid,
                      ClassConstraint reading, int refine_rounds) {
  validate_gaussian(p);
  if (grid < 100) throw ConfigError("numeric_oracle: grid must be at least 100");
  if (refine_rounds < 0) throw ConfigError("numeric_oracle: negative refinement depth");
  if (R < 0.0) throw NegativeRate("numeric_oracle: rate budget must be nonnegative");
  require_feasible_class(p, C);

  const double h = p.label_entropy();
  const double sigma_x = std::sqrt(p.sigma2_x);
  const double rho2 = p.correlation() * p.correlation();
  const double rate_cap = one_minus_exp_neg2(R);  // f^2 <= rate_cap
  const double class_shortfall = C >= h ? 0.0 : -std::expm1(2.0 * (C - h));
  const double v_min = min_reconstruction_variance(p, C);
  constexpr double kSlack = 1e-12;

  auto feasible = [&](double s, double f) {
    if (f * f > rate_cap + kSlack) return false;
    if (reading == ClassConstraint::ReconstructionVariance) {
      return s * s >= v_min - kSlack;
    }
    return rho2 * f * f >= class_shortfall - kSlack;
  };
  auto objective = [&](double s, double f) {
    return p.sigma2_x + s * s - 2.0 * f * sigma_x * s;
  };

  OracleBest best =
      refine_search(3.0 * sigma_x, grid, refine_rounds, feasible, objective);

  // The constant reconstruction (sigma_xhat = 0) is feasible whenever the
  // classification budget is slack at h; both readings agree there.
  if (C >= h && p.sigma2_x < best.value) {
    best.value = p.sigma2_x;
    best.found = true;
  }
  if (!best.found) {
    throw InfeasibleOnGrid(
        "numeric_oracle: no grid point satisfies the rate and classification "
        "constraints under the selected reading");
  }
  return best.value;
}

double numeric_rate_oracle(const GaussianPair& p, double D, double C, int grid,
                           int refine_rounds) {
  validate_gaussian(p);
  if (grid < 100) throw ConfigError("numeric_rate_oracle: grid must be at least 100");
  if (refine_rounds < 0) throw ConfigError("numeric_rate_oracle: negative refinement depth");
  if (!(D > 0.0)) {
    throw NonPositiveDistortion("numeric_rate_oracle: distortion budget must be positive");
  }
  require_feasible_class(p, C);

  const double h = p.label_entropy();
  const double sigma_x = std::sqrt(p.sigma2_x);
  const double rho2 = p.correlation() * p.correlation();
  const double class_shortfall = C >= h ? 0.0 : -std::expm1(2.0 * (C - h));
  constexpr double kSlack = 1e-12;

  auto feasible = [&](double s, double f) {
    if (p.sigma2_x + s * s - 2.0 * f * sigma_x * s > D + kSlack) return false;
    return rho2 * f * f >= class_shortfall - kSlack;
  };
  // Rate is monotone in f, so minimizing f minimizes the rate.
  auto objective = [&](double /*s*/, double f) { return f; };

  OracleBest best =
      refine_search(3.0 * sigma_x, grid, refine_rounds, feasible, objective);

  if (C >= h && D >= p.sigma2_x && 0.0 < best.value) {
    best.value = 0.0;
    best.found = true;
  }
  if (!best.found) {
    throw InfeasibleOnGrid(
        "numeric_rate_oracle: no grid point satisfies the distortion and "
        "classification constraints");
  }
  const double f2 = best.value * best.value;
  return f2 >= 1.0 ? kInf : -0.5 * std::log1p(-f2);
}

}  // namespace rdc
