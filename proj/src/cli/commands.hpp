#pragma once

// Command implementations behind the rdc-lab executable. Each run_* function
// takes plain argument structs bound to command-line flags, writes its CSV
// and JSON report, and throws the library's typed errors on bad input.
// All numeric inputs are in nats; --units only rescales serialized output.

#include <cstdint>
#include <string>
#include <vector>

#include "rdc/model.hpp"

namespace rdc::cli {

struct OutputArgs {
  std::string units = "nats";  // "nats" or "bits"
  std::string csv_path;        // empty: "<command>.csv"
  std::string report_path;     // empty: "<command>.report.json"
};

// Factor applied to entropic outputs (rates, entropies) at serialization.
double unit_scale(const std::string& units);

struct GaussianModelArgs {
  double mu_x = 0.0;
  double sigma2_x = 1.0;
  double mu_s = 0.0;
  double sigma2_s = 1.0;
  double theta1 = 0.5;
  GaussianPair pair() const;
};

struct DiscreteModelArgs {
  std::vector<double> q;
  std::vector<double> t_flat;  // row-major labels x n
  std::size_t labels = 0;
  std::vector<double> values;        // empty: 0, 1, ..., n-1
  std::vector<double> recon_values;  // empty: same as values
  DiscreteSource source() const;
};

void run_gaussian_dcr(const GaussianModelArgs& model, double rate, int points,
                      const OutputArgs& out);

// classification defaults to the label entropy (slack budget) when NaN;
// d_lo and d_hi default to 0.01 and 1.2 times the source variance.
void run_gaussian_rdc(const GaussianModelArgs& model, double classification,
                      double d_lo, double d_hi, int points,
                      const OutputArgs& out);

void run_gaussian_universal(const GaussianModelArgs& model,
                            const std::vector<double>& rates, int points,
                            std::size_t mc_samples, std::uint64_t seed,
                            const OutputArgs& out);

// c_lo and c_hi default to the conditional label entropy and the label
// entropy when NaN.
void run_discrete_dcr(const DiscreteModelArgs& model, int grid, double rate,
                      double c_lo, double c_hi, int points,
                      const OutputArgs& out);

struct RegionArgs {
  std::vector<double> channel_flat;  // row-major z_letters x n; empty: extract
  std::size_t z_letters = 0;
  int grid = 64;                  // extraction grid resolution
  double rate = 0.5;              // extraction rate budget, nats
  double classification = -1.0;   // extraction budget; < 0: label entropy
  int c_points = 25;
  int stochastic_grid = 20;
};

void run_region(const DiscreteModelArgs& model, const RegionArgs& args,
                const OutputArgs& out);

struct BoundCheckArgs {
  std::string mode;            // "discrete" or "gaussian"
  std::vector<double> joint_flat;  // row-major nx rows
  std::size_t nx = 0;
  std::vector<double> values;  // empty: 0, 1, ..., nx-1
  double rate = 0.5;
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
};

void run_bound_check(const GaussianModelArgs& model, const BoundCheckArgs& args,
                     const OutputArgs& out);

struct W2Args {
  std::string mode;  // "discrete" or "gaussian"
  std::vector<double> a_support, a_weights, b_support, b_weights;
  double mu_a = 0.0, var_a = 1.0, mu_b = 0.0, var_b = 1.0;
};

void run_w2(const W2Args& args, const OutputArgs& out);

}  // namespace rdc::cli
