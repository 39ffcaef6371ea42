#pragma once

// One fixed Gaussian representation, many targets: builds the rate-R
// representation Z once, then reaches any (distortion, classification) target
// on or above the fixed-rate boundary by scaling an affine decoder of Z.
// Verifies that sharing Z across every target costs no rate, analytically and
// by Monte Carlo.

#include <cstdint>
#include <vector>

#include "rdc/model.hpp"

namespace rdc {

struct GaussianRepresentation {
  double rho_xz = 0.0;   // correlation of X and Z, nonnegative by construction
  double mu_z = 0.0;
  double sigma2_z = 1.0;
  double rate = 0.0;     // I(X;Z) in nats; rho_xz^2 = 1 - e^{-2 rate}
};

struct UniversalDecoder {
  double gamma = 0.0;    // output scale; reconstruction std is gamma * sigma_z
  int sign = 1;          // sign(rho_xz)
  double mu_z = 0.0;
  double mu_x = 0.0;
  double target_d = 0.0;
  double target_c = 0.0;
  // The decoder map is X_hat = sign * gamma * (Z - mu_z) + mu_x.
};

// Z with mu_z = 0, sigma2_z = 1 and rho_xz = sqrt(1 - e^{-2R}).
GaussianRepresentation build_representation(const GaussianPair& p, double R);

// Chooses the decoder scale for a (D, C) target: the classification budget
// fixes a floor on the reconstruction variance, the distortion budget an
// interval of admissible scales; the returned scale satisfies both
// analytically. Throws InfeasibleClassification when C is below the
// feasibility threshold and InfeasiblePair when (D, C) lies below the
// fixed-rate boundary of the representation.
UniversalDecoder decoder_for(const GaussianPair& p, const GaussianRepresentation& z,
                             double D, double C);

// Closed-form E[(X - X_hat)^2] of the decoder.
double achieved_distortion(const GaussianPair& p, const GaussianRepresentation& z,
                           const UniversalDecoder& dec);

// Classification loss the variance rule assigns to the decoder output
// (the readout under which decoder_for meets its target exactly).
double achieved_class_loss(const GaussianPair& p, const UniversalDecoder& dec,
                           const GaussianRepresentation& z);

// Large-sample limit of the Monte Carlo plug-in estimate below: the exact
// conditional entropy H(S|X_hat) of the decoder output. For any nonzero scale
// this equals case_boundary(p, z.rate), independent of gamma, because the
// decoder is affine in Z; at gamma = 0 it is h_S.
double plugin_class_loss_limit(const GaussianPair& p, const GaussianRepresentation& z,
                               const UniversalDecoder& dec);

struct DecoderCheck {
  double rate = 0.0;      // boundary rate the target was sampled from
  double target_d = 0.0;
  double target_c = 0.0;
  double achieved_d = 0.0;
  double achieved_c = 0.0;
  double gamma = 0.0;
};

struct NoPenaltyReport {
  std::vector<DecoderCheck> checks;
  double max_d_violation = 0.0;  // max over checks of achieved_d - target_d
  double max_c_violation = 0.0;  // max over checks of achieved_c - target_c
};

// Builds Z once at max(rates), then sweeps every boundary point of every
// listed rate through decoder_for and records the analytic achievements.
// Zero rate penalty means both max violations stay at numerical noise.
NoPenaltyReport verify_no_penalty(const GaussianPair& p, const std::vector<double>& rates,
                                  int points_per_rate);

struct MonteCarloEstimate {
  double d_hat = 0.0;  // empirical mean squared error
  double c_hat = 0.0;  // Gaussian plug-in H(S|X_hat) from the sample correlation
};

// Samples (X, S, Z) jointly Gaussian with the declared covariance structure
// and pushes Z through the decoder. Deterministic for a fixed seed.
MonteCarloEstimate monte_carlo_check(const GaussianPair& p, const UniversalDecoder& dec,
                                     const GaussianRepresentation& z,
                                     std::size_t n_samples, std::uint64_t seed);

}  // namespace rdc
