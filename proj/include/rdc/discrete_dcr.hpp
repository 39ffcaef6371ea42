#pragma once

// Distortion-classification-rate tradeoff for finite-alphabet sources.
// Every test channel is a mixture of atoms (a reconstruction letter paired
// with a posterior over source letters); minimizing distortion under the
// classification and rate budgets is then a linear program over mixture
// weights, solved on a discretized simplex grid of posteriors.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "rdc/model.hpp"

namespace rdc {

struct Atom {
  std::size_t recon_index = 0;
  std::vector<double> posterior;  // distribution over the n source letters
  double entropy = 0.0;           // H(posterior), nats
  double class_entropy = 0.0;     // H(T * posterior), nats
  double distortion = 0.0;        // expected distortion of this letter pair
};

struct AtomGrid {
  std::vector<Atom> atoms;
  int resolution = 0;  // simplex grid denominator g; posteriors are i/g
};

// Number of atoms a grid would hold: k * binomial(g + n - 1, n - 1).
std::size_t grid_atom_count(std::size_t n, std::size_t k, int resolution);

// Enumerates every posterior with denominator `resolution` for every
// reconstruction letter. Throws AtomBudgetExceeded past `atom_budget`.
AtomGrid build_grid(const DiscreteSource& src, int resolution,
                    std::size_t atom_budget = 2000000);

struct DcrSolution {
  double d = 0.0;
  // Optimal mixture weights by atom index, the LP basis support.
  std::vector<std::pair<std::size_t, double>> weights;
  double class_entropy = 0.0;        // achieved sum of w * class_entropy
  double mutual_information = 0.0;   // H(q) - sum of w * entropy
};

// Minimum expected distortion over mixtures w >= 0 with
//   sum w * posterior = q,   sum w * class_entropy <= C,
//   sum w * entropy >= H(q) - R,   sum w = 1.
// Throws LpInfeasible; its provably_infeasible flag is set when C is below
// the conditional label entropy H(S|X), which no representation at any rate
// or resolution can beat, and cleared when the failure may be an artifact of
// the grid resolution or of rate-classification tension.
DcrSolution solve_dcr(const DiscreteSource& src, const AtomGrid& grid, double C,
                      double R);

struct ConvexityReport {
  int midpoint_trials = 0;
  int monotonicity_sweeps = 0;
  double max_convexity_violation = 0.0;     // max of D(mid) - (D1 + D2)/2
  double max_monotonicity_violation = 0.0;  // max increase along a relaxing axis
};

// Samples random feasible budget pairs and checks midpoint convexity of the
// LP value plus non-increase along each axis; trials/4 axis sweeps run
// alongside `trials` midpoint checks.
ConvexityReport check_convexity(const DiscreteSource& src, const AtomGrid& grid,
                                int trials, std::uint64_t seed);

}  // namespace rdc
