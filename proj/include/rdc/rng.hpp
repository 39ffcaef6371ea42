#pragma once

// Deterministic Gaussian sampling. std::normal_distribution's algorithm is
// implementation-defined, so byte-identical output for a fixed seed requires
// pinning the transform ourselves: mt19937_64 uniforms fed through Box-Muller.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace rdc {

class GaussianSampler {
public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1]: top 53 bits of the engine output, shifted off zero so
  // log() below is always finite.
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Lower-triangular Cholesky factor of a symmetric positive semidefinite 3x3
// matrix. Semidefinite inputs are tolerated: a vanishing pivot zeroes its
// column, which is exactly the degenerate (deterministically dependent) case.
inline std::array<std::array<double, 3>, 3> cholesky3(
    const std::array<std::array<double, 3>, 3>& a) {
  std::array<std::array<double, 3>, 3> l{};
  for (int j = 0; j < 3; ++j) {
    double diag = a[j][j];
    for (int k = 0; k < j; ++k) diag -= l[j][k] * l[j][k];
    l[j][j] = diag > 0.0 ? std::sqrt(diag) : 0.0;
    for (int i = j + 1; i < 3; ++i) {
      double off = a[i][j];
      for (int k = 0; k < j; ++k) off -= l[i][k] * l[j][k];
      l[i][j] = l[j][j] > 0.0 ? off / l[j][j] : 0.0;
    }
  }
  return l;
}

// Samples of a trivariate Gaussian with the given means and covariance,
// drawn as mean + L * (iid standard normals).
class TrivariateGaussian {
public:
  TrivariateGaussian(const std::array<double, 3>& mean,
                     const std::array<std::array<double, 3>, 3>& cov)
      : mean_(mean), chol_(cholesky3(cov)) {}

  std::array<double, 3> sample(GaussianSampler& rng) const {
    const std::array<double, 3> z{rng.normal(), rng.normal(), rng.normal()};
    std::array<double, 3> x{};
    for (int i = 0; i < 3; ++i) {
      double v = mean_[i];
      for (int k = 0; k <= i; ++k) v += chol_[i][k] * z[k];
      x[i] = v;
    }
    return x;
  }

private:
  std::array<double, 3> mean_;
  std::array<std::array<double, 3>, 3> chol_;
};

}  // namespace rdc
