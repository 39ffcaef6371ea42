#pragma once

// Distortion cost of posterior sampling: a decoder that redraws the source
// from the posterior given the representation, instead of emitting the
// conditional mean, pays exactly twice the minimal mean-square error. The
// discrete check evaluates both sides in closed form; the Gaussian check
// estimates the sampling side by Monte Carlo.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rdc/model.hpp"

namespace rdc {

struct PosteriorSamplingResult {
  double d_min = 0.0;         // E[(X - E[X|M])^2]
  double d_ps = 0.0;          // E[(X - Xhat)^2], Xhat ~ posterior given M
  double ratio = 0.0;         // d_ps / d_min; NaN when d_min = 0
  double se = 0.0;            // standard error of d_ps (Monte Carlo only)
  double psnr_drop_db = 0.0;  // 10 * log10(ratio)
  double marginal_gap = 0.0;  // max |P(Xhat = x) - P(X = x)| (discrete only)
};

// joint[i][m] = P(X = values[i], M = m); entries nonnegative, total 1 within
// 1e-12, else InvalidJoint. d_ps is evaluated by the full double sum over
// conditionally independent draws, not via d_min.
PosteriorSamplingResult posterior_sampling_check_discrete(
    const std::vector<std::vector<double>>& joint,
    const std::vector<double>& values);

// Gaussian source compressed at rate R nats: the representation M is the
// forward-channel decomposition X = U + V with U = E[X|M], and posterior
// sampling redraws V. Requires R > 0 and n_samples >= 100000; d_min is the
// exact distortion sigma2_x * exp(-2R), d_ps the empirical mean with its
// standard error.
PosteriorSamplingResult posterior_sampling_check_gaussian(const GaussianPair& p,
                                                          double R,
                                                          std::size_t n_samples,
                                                          std::uint64_t seed);

}  // namespace rdc
