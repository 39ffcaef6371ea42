#include "rdc/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rdc {

double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double gaussian_entropy(double sigma2) {
  if (sigma2 <= 0.0) throw NonPositiveVariance("gaussian_entropy: variance must be positive");
  return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * sigma2);
}

double GaussianPair::correlation() const { return theta1 / std::sqrt(sigma2_x * sigma2_s); }

double GaussianPair::label_entropy() const { return gaussian_entropy(sigma2_s); }

const GaussianPair& validate_gaussian(const GaussianPair& p) {
  if (!(p.sigma2_x > 0.0) || !(p.sigma2_s > 0.0)) {
    throw NonPositiveVariance("GaussianPair: variances must be positive");
  }
  if (p.theta1 * p.theta1 > p.sigma2_x * p.sigma2_s) {
    std::ostringstream msg;
    msg << "GaussianPair: theta1^2 = " << p.theta1 * p.theta1 << " exceeds sigma2_x*sigma2_s = "
        << p.sigma2_x * p.sigma2_s;
    throw CovarianceExceedsCauchySchwarz(msg.str());
  }
  return p;
}

double feasibility_threshold(const GaussianPair& p) {
  validate_gaussian(p);
  const double rho = p.correlation();
  const double one_minus_rho2 = (1.0 - rho) * (1.0 + rho);
  if (one_minus_rho2 <= 0.0) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(one_minus_rho2) + p.label_entropy();
}

namespace {

constexpr double kProbTol = 1e-12;

void check_prob_vector(const std::vector<double>& p, const char* what) {
  double sum = 0.0;
  for (double x : p) {
    if (x < 0.0) throw InvalidDistribution(std::string(what) + ": negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kProbTol) {
    std::ostringstream msg;
    msg << what << ": entries sum to " << sum << ", expected 1 within 1e-12";
    throw InvalidDistribution(msg.str());
  }
}

}  // namespace

void DiscreteSource::finalize() {
  if (q.empty()) throw InvalidDistribution("DiscreteSource: empty marginal");
  check_prob_vector(q, "DiscreteSource.q");
  if (values.size() != q.size()) {
    throw ConfigError("DiscreteSource: values length must match marginal length");
  }
  if (t.empty()) throw ConfigError("DiscreteSource: label channel is empty");
  for (const auto& row : t) {
    if (row.size() != q.size()) throw ConfigError("DiscreteSource: label channel must be m x n");
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    double col = 0.0;
    for (const auto& row : t) {
      if (row[i] < 0.0) throw InvalidDistribution("DiscreteSource.t: negative entry");
      col += row[i];
    }
    if (std::abs(col - 1.0) > kProbTol) {
      std::ostringstream msg;
      msg << "DiscreteSource.t: column " << i << " sums to " << col;
      throw InvalidDistribution(msg.str());
    }
  }
  if (reconstruction_values.empty()) reconstruction_values = values;
  if (distortion.empty()) {
    distortion.assign(q.size(), std::vector<double>(reconstruction_values.size(), 0.0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t a = 0; a < reconstruction_values.size(); ++a) {
        const double diff = values[i] - reconstruction_values[a];
        distortion[i][a] = diff * diff;
      }
    }
  }
  if (distortion.size() != q.size()) throw ConfigError("DiscreteSource: distortion must be n x k");
  for (const auto& row : distortion) {
    if (row.size() != reconstruction_values.size()) {
      throw ConfigError("DiscreteSource: distortion must be n x k");
    }
    for (double d : row) {
      if (d < 0.0) throw ConfigError("DiscreteSource: negative distortion entry");
    }
  }
}

double DiscreteSource::source_entropy() const { return entropy(q); }

double DiscreteSource::label_entropy() const {
  std::vector<double> ps(m(), 0.0);
  for (std::size_t j = 0; j < m(); ++j) {
    for (std::size_t i = 0; i < n(); ++i) ps[j] += t[j][i] * q[i];
  }
  return entropy(ps);
}

double DiscreteSource::conditional_entropy() const {
  double h = 0.0;
  for (std::size_t i = 0; i < n(); ++i) {
    double hi = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      const double x = t[j][i];
      if (x > 0.0) hi -= x * std::log(x);
    }
    h += q[i] * hi;
  }
  return h;
}

const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::DistortionActive: return "distortion_active";
    case CaseLabel::ClassificationActive: return "classification_active";
    case CaseLabel::BothInactive: return "both_inactive";
    case CaseLabel::Infeasible: return "infeasible";
  }
  return "unknown";
}

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::C: return "C";
    case SweepAxis::D: return "D";
    case SweepAxis::R: return "R";
  }
  return "unknown";
}

void TradeoffCurve::validate() const {
  auto axis_value = [this](const TradeoffPoint& p) {
    switch (sweep_axis) {
      case SweepAxis::C: return p.c;
      case SweepAxis::D: return p.d;
      case SweepAxis::R: return p.r;
    }
    return p.c;
  };
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (axis_value(points[i]) < axis_value(points[i - 1])) {
      throw InternalError("TradeoffCurve: points not sorted along sweep axis");
    }
    if (sweep_axis == SweepAxis::C && points[i].r == points[i - 1].r &&
        points[i].d > points[i - 1].d + 1e-9) {
      throw InternalError("TradeoffCurve: distortion increased along a C-sweep at fixed rate");
    }
  }
}

}  // namespace rdc
