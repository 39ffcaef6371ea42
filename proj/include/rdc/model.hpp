#pragma once

// Core model types shared by every solver: the jointly Gaussian (X, S) pair,
// finite-alphabet sources with a label channel, and tradeoff curve containers.
// All entropies and rates are in nats throughout the library; unit conversion
// happens only at CLI serialization.

#include <cstddef>
#include <string>
#include <vector>

#include "rdc/errors.hpp"

namespace rdc {

// Entropy of a discrete distribution in nats, with the 0*ln(0) = 0 convention.
double entropy(const std::vector<double>& p);

// Differential entropy of a scalar Gaussian with the given variance, nats.
double gaussian_entropy(double sigma2);

struct GaussianPair {
  double mu_x = 0.0;
  double sigma2_x = 1.0;
  double mu_s = 0.0;
  double sigma2_s = 1.0;
  double theta1 = 0.0;  // Cov(X, S)

  double correlation() const;    // theta1 / sqrt(sigma2_x * sigma2_s)
  double label_entropy() const;  // h_S = 0.5 * ln(2*pi*e*sigma2_s)
};

// Throws NonPositiveVariance or CovarianceExceedsCauchySchwarz; returns the
// pair unchanged otherwise (validation is idempotent).
const GaussianPair& validate_gaussian(const GaussianPair& p);

// Smallest classification loss any reconstruction can reach:
// C_feas = 0.5*ln(1 - rho^2) + h_S. Returns -infinity when |rho| = 1.
double feasibility_threshold(const GaussianPair& p);

struct DiscreteSource {
  // Source marginal over n letters.
  std::vector<double> q;
  // Label channel, m x n column-stochastic: t[j][i] = P(S = j | X = i).
  std::vector<std::vector<double>> t;
  // Numeric embedding of the source alphabet (length n), used for MSE.
  std::vector<double> values;
  // Reconstruction alphabet embedding (length k; defaults to `values`).
  std::vector<double> reconstruction_values;
  // n x k distortion matrix (defaults to squared embedding differences).
  std::vector<std::vector<double>> distortion;

  std::size_t n() const { return q.size(); }
  std::size_t m() const { return t.size(); }
  std::size_t k() const { return reconstruction_values.size(); }

  // Fills reconstruction_values/distortion defaults and checks invariants
  // (probability sums within 1e-12, column-stochastic t, distortion >= 0).
  // Throws InvalidDistribution / ConfigError.
  void finalize();

  double source_entropy() const;       // H(q)
  double label_entropy() const;        // H(S) under marginal T*q
  double conditional_entropy() const;  // H(S|X) = sum_i q_i H(T e_i)
};

enum class CaseLabel { DistortionActive, ClassificationActive, BothInactive, Infeasible };

const char* to_string(CaseLabel c);

struct TradeoffPoint {
  double d = 0.0;
  double c = 0.0;  // may be negative: differential entropies have no sign constraint
  double r = 0.0;
  CaseLabel case_label = CaseLabel::BothInactive;
};

enum class SweepAxis { C, D, R };

const char* to_string(SweepAxis a);

struct TradeoffCurve {
  std::vector<TradeoffPoint> points;
  SweepAxis sweep_axis = SweepAxis::C;
  std::string params_digest;

  // Checks that points are sorted ascending along the sweep axis and that D is
  // non-increasing along a C-sweep. Throws InternalError on violation.
  void validate() const;
};

}  // namespace rdc
