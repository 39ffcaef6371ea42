#pragma once

// Distortion-classification region of a fixed finite representation: the
// source is quantized by a given channel X -> Z, and every decoder Z -> Xhat
// trades reconstruction error against the label uncertainty of its output.
// Provides the exact decoder frontier by enumeration, two closed-form
// extreme points built on the conditional-mean reconstruction, and a
// transport-based lower-bound curve.

#include <cstddef>
#include <utility>
#include <vector>

#include "rdc/model.hpp"

namespace rdc {

struct RegionPoint {
  double d = 0.0;
  double c = 0.0;
};

struct FixedRepresentation {
  DiscreteSource src;
  // channel[z][i] = P(Z = z | X = i); columns must sum to 1 within 1e-9 and
  // are renormalized exactly by finalize().
  std::vector<std::vector<double>> channel;

  // Derived by finalize().
  std::vector<double> p_z;
  std::vector<std::vector<double>> posterior;        // [z][i] = P(X=i | Z=z)
  std::vector<std::vector<double>> joint_zs;         // [z][s] = P(Z=z, S=s)
  std::vector<std::vector<double>> mean_distortion;  // [z][a] = E[dist(X,a)|Z=z]
  std::vector<double> mmse_values;                   // [z] = E[value(X) | Z=z]
  double mmse_distortion = 0.0;  // E[(value(X) - mmse_values(Z))^2]

  std::size_t z_count() const { return channel.size(); }
  void finalize();
};

// Exact (distortion, label uncertainty) of the deterministic decoder that
// maps letter z to reconstruction index g[z].
RegionPoint evaluate_decoder(const FixedRepresentation& rep,
                             const std::vector<std::size_t>& g);

// Two achievable anchors of the region:
//   first: the conditional-mean reconstruction, distortion mmse_distortion
//     and label uncertainty of the grouping of Z by equal conditional means;
//   second: the deterministic decoder of minimal label uncertainty (first in
//     enumeration order on ties), its distortion decomposed as
//     mmse_distortion plus the squared transport cost from the conditional
//     means to the decoder output.
// Throws DecoderSpaceTooLarge past 10^6 decoders.
std::pair<RegionPoint, RegionPoint> extreme_points(const FixedRepresentation& rep);

// Lower bound on the distortion of any decoder with label uncertainty at
// most C: mmse_distortion plus the minimal squared transport cost from the
// conditional means to any output distribution meeting the budget, where
// each reconstruction letter is charged the label entropy of its nearest
// source letter. Throws InfeasibleClassificationLevel when C is below every
// such entropy.
double outer_bound_at(const FixedRepresentation& rep, double C);
std::vector<RegionPoint> outer_bound_curve(const FixedRepresentation& rep,
                                           const std::vector<double>& c_grid);

// Label entropy the outer bound charges to each reconstruction letter: the
// entropy of the label column of the nearest source letter by value,
// smallest index on ties.
std::vector<double> charged_entropies(const FixedRepresentation& rep);

// Whether the nearest-source-letter convention of the outer bound is valid
// for this representation: every reconstruction letter's charged entropy
// must be at most the label entropy of every letter of Z. When this holds,
// outer_bound_at lies below every decoder, including stochastic ones.
bool convention_sound(const FixedRepresentation& rep);

// Pareto frontier over all deterministic decoders (full enumeration, at
// most 10^6), refined by mixing adjacent frontier decoders at
// stochastic_grid equispaced mixture levels. Points are sorted by ascending
// distortion. Throws DecoderSpaceTooLarge.
std::vector<RegionPoint> decoder_oracle(const FixedRepresentation& rep,
                                        int stochastic_grid = 20);

// For a source of variance sigma2_x reconstructed once at mean-square error
// d1 and once with output variance sigma2_xhat3, returns the additive and
// multiplicative penalties any joint realization must incur:
//   gap   = sigma2_x + sigma2_xhat3 - 2*sqrt(sigma2_xhat3)*sqrt(sigma2_x-d1) - 2*d1
//   ratio = (sigma2_x + sigma2_xhat3 - 2*sqrt(sigma2_xhat3)*sqrt(sigma2_x-d1)) / (2*d1)
// ratio is +infinity at d1 = 0. Throws D1OutOfRange unless 0 <= d1 <=
// sigma2_x and NegativeVariance for sigma2_xhat3 < 0.
std::pair<double, double> gap_lower_bounds(double sigma2_x, double sigma2_xhat3,
                                           double d1);

struct RegionEstimate {
  std::vector<RegionPoint> inner_points;
  std::vector<RegionPoint> outer_curve;
  RegionPoint extreme_a;
  RegionPoint extreme_b;
  bool convention_ok = false;
};

RegionEstimate estimate_region(const FixedRepresentation& rep,
                               const std::vector<double>& c_grid,
                               int stochastic_grid = 20);

}  // namespace rdc
