// rdc-lab: curve and report emitter for rate-distortion-classification
// tradeoffs. Every subcommand writes a CSV (except bound-check) and a JSON
// run report; numeric inputs are always in nats, --units only rescales
// entropic output columns.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "rdc/errors.hpp"
#include "rdc/version.hpp"

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

void add_output_flags(CLI::App* cmd, rdc::cli::OutputArgs& out) {
  cmd->add_option("--units", out.units, "Output units for entropic columns")
      ->check(CLI::IsMember({"nats", "bits"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", out.csv_path,
                  "CSV output path (default: <command>.csv)");
  cmd->add_option("--report", out.report_path,
                  "JSON report path (default: <command>.report.json)");
}

void add_gaussian_flags(CLI::App* cmd, rdc::cli::GaussianModelArgs& m) {
  cmd->add_option("--mu-x", m.mu_x, "Source mean")->capture_default_str();
  cmd->add_option("--sigma2-x", m.sigma2_x, "Source variance")
      ->capture_default_str();
  cmd->add_option("--mu-s", m.mu_s, "Label mean")->capture_default_str();
  cmd->add_option("--sigma2-s", m.sigma2_s, "Label variance")
      ->capture_default_str();
  cmd->add_option("--theta1", m.theta1, "Source-label covariance")
      ->capture_default_str();
}

void add_discrete_flags(CLI::App* cmd, rdc::cli::DiscreteModelArgs& m) {
  cmd->add_option("--q", m.q, "Source distribution, comma separated")
      ->delimiter(',')
      ->required();
  cmd->add_option("--t", m.t_flat,
                  "Label channel P(S=j|X=i), row-major labels x letters")
      ->delimiter(',')
      ->required();
  cmd->add_option("--labels", m.labels, "Number of label values")->required();
  cmd->add_option("--values", m.values,
                  "Numeric source letter values (default 0,1,...)")
      ->delimiter(',');
  cmd->add_option("--recon-values", m.recon_values,
                  "Reconstruction letter values (default: source values)")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for rate-distortion-classification "
               "tradeoffs"};
  app.set_version_flag("--version", std::string(RDC_LAB_VERSION));
  app.set_config("--config", "",
                 "Read options from a key=value file; flags take precedence");
  app.require_subcommand(1);

  // gaussian-dcr
  rdc::cli::GaussianModelArgs dcr_model;
  rdc::cli::OutputArgs dcr_out;
  double dcr_rate = 0.25;
  int dcr_points = 100;
  CLI::App* dcr = app.add_subcommand(
      "gaussian-dcr", "Distortion against classification budget at fixed rate");
  add_gaussian_flags(dcr, dcr_model);
  dcr->add_option("--rate", dcr_rate, "Rate budget, nats")->capture_default_str();
  dcr->add_option("--points", dcr_points, "Sweep points")->capture_default_str();
  add_output_flags(dcr, dcr_out);
  dcr->callback([&] {
    rdc::cli::run_gaussian_dcr(dcr_model, dcr_rate, dcr_points, dcr_out);
  });

  // gaussian-rdc
  rdc::cli::GaussianModelArgs rdc_model;
  rdc::cli::OutputArgs rdc_out;
  double rdc_class = kUnset;
  double rdc_d_lo = kUnset;
  double rdc_d_hi = kUnset;
  int rdc_points = 100;
  CLI::App* rdc_cmd = app.add_subcommand(
      "gaussian-rdc", "Rate against distortion budget at fixed classification");
  add_gaussian_flags(rdc_cmd, rdc_model);
  rdc_cmd->add_option("--classification", rdc_class,
                      "Classification budget, nats (default: label entropy)");
  rdc_cmd->add_option("--d-min", rdc_d_lo,
                      "Lowest distortion budget (default: 0.01 * variance)");
  rdc_cmd->add_option("--d-max", rdc_d_hi,
                      "Highest distortion budget (default: 1.2 * variance)");
  rdc_cmd->add_option("--points", rdc_points, "Sweep points")
      ->capture_default_str();
  add_output_flags(rdc_cmd, rdc_out);
  rdc_cmd->callback([&] {
    rdc::cli::run_gaussian_rdc(rdc_model, rdc_class, rdc_d_lo, rdc_d_hi,
                               rdc_points, rdc_out);
  });

  // gaussian-universal
  rdc::cli::GaussianModelArgs uni_model;
  rdc::cli::OutputArgs uni_out;
  std::vector<double> uni_rates;
  int uni_points = 100;
  std::size_t uni_mc = 0;
  std::uint64_t uni_seed = 0;
  CLI::App* uni = app.add_subcommand(
      "gaussian-universal",
      "Fixed-representation decoders swept along the tradeoff boundary");
  add_gaussian_flags(uni, uni_model);
  uni->add_option("--rates", uni_rates, "Rates to check, nats")
      ->delimiter(',')
      ->required();
  uni->add_option("--points", uni_points, "Boundary points per rate")
      ->capture_default_str();
  uni->add_option("--mc-samples", uni_mc,
                  "Monte Carlo samples per rate (0 disables)")
      ->capture_default_str();
  uni->add_option("--seed", uni_seed, "Monte Carlo seed")->capture_default_str();
  add_output_flags(uni, uni_out);
  uni->callback([&] {
    rdc::cli::run_gaussian_universal(uni_model, uni_rates, uni_points, uni_mc,
                                     uni_seed, uni_out);
  });

  // discrete-dcr
  rdc::cli::DiscreteModelArgs ddcr_model;
  rdc::cli::OutputArgs ddcr_out;
  int ddcr_grid = 64;
  double ddcr_rate = 0.5;
  double ddcr_c_lo = kUnset;
  double ddcr_c_hi = kUnset;
  int ddcr_points = 40;
  CLI::App* ddcr = app.add_subcommand(
      "discrete-dcr",
      "Distortion against classification budget for a finite source");
  add_discrete_flags(ddcr, ddcr_model);
  ddcr->add_option("--grid", ddcr_grid, "Posterior grid resolution")
      ->capture_default_str();
  ddcr->add_option("--rate", ddcr_rate, "Rate budget, nats")
      ->capture_default_str();
  ddcr->add_option("--c-min", ddcr_c_lo,
                   "Sweep start (default: conditional label entropy)");
  ddcr->add_option("--c-max", ddcr_c_hi, "Sweep end (default: label entropy)");
  ddcr->add_option("--points", ddcr_points, "Sweep points")
      ->capture_default_str();
  add_output_flags(ddcr, ddcr_out);
  ddcr->callback([&] {
    rdc::cli::run_discrete_dcr(ddcr_model, ddcr_grid, ddcr_rate, ddcr_c_lo,
                               ddcr_c_hi, ddcr_points, ddcr_out);
  });

  // region
  rdc::cli::DiscreteModelArgs reg_model;
  rdc::cli::RegionArgs reg_args;
  rdc::cli::OutputArgs reg_out;
  CLI::App* reg = app.add_subcommand(
      "region", "Decoder frontier and transport bound of a fixed channel");
  add_discrete_flags(reg, reg_model);
  reg->add_option("--channel", reg_args.channel_flat,
                  "Channel P(Z=z|X=i), row-major z-letters x letters "
                  "(default: extract from the tradeoff program)")
      ->delimiter(',');
  reg->add_option("--z-letters", reg_args.z_letters,
                  "Channel rows when --channel is given");
  reg->add_option("--grid", reg_args.grid, "Extraction grid resolution")
      ->capture_default_str();
  reg->add_option("--rate", reg_args.rate, "Extraction rate budget, nats")
      ->capture_default_str();
  reg->add_option("--classification", reg_args.classification,
                  "Extraction classification budget, nats (negative: label "
                  "entropy)")
      ->capture_default_str();
  reg->add_option("--c-points", reg_args.c_points, "Outer bound grid size")
      ->capture_default_str();
  reg->add_option("--stochastic-grid", reg_args.stochastic_grid,
                  "Mixture levels between adjacent frontier decoders")
      ->capture_default_str();
  add_output_flags(reg, reg_out);
  reg->callback([&] { rdc::cli::run_region(reg_model, reg_args, reg_out); });

  // bound-check
  rdc::cli::GaussianModelArgs bc_model;
  rdc::cli::BoundCheckArgs bc_args;
  rdc::cli::OutputArgs bc_out;
  CLI::App* bc = app.add_subcommand(
      "bound-check", "Posterior-sampling distortion against the minimum");
  bc->add_option("--mode", bc_args.mode, "'discrete' or 'gaussian'")
      ->check(CLI::IsMember({"discrete", "gaussian"}))
      ->required();
  bc->add_option("--joint", bc_args.joint_flat,
                 "Joint P(X,M), row-major with --nx rows")
      ->delimiter(',');
  bc->add_option("--nx", bc_args.nx, "Number of source letters in --joint");
  bc->add_option("--values", bc_args.values,
                 "Source letter values (default 0,1,...)")
      ->delimiter(',');
  add_gaussian_flags(bc, bc_model);
  bc->add_option("--rate", bc_args.rate, "Gaussian rate, nats")
      ->capture_default_str();
  bc->add_option("--samples", bc_args.samples, "Monte Carlo samples")
      ->capture_default_str();
  bc->add_option("--seed", bc_args.seed, "Monte Carlo seed")
      ->capture_default_str();
  add_output_flags(bc, bc_out);
  bc->callback([&] { rdc::cli::run_bound_check(bc_model, bc_args, bc_out); });

  // w2
  rdc::cli::W2Args w2_args;
  rdc::cli::OutputArgs w2_out;
  CLI::App* w2 = app.add_subcommand(
      "w2", "Squared 2-Wasserstein distance between line distributions");
  w2->add_option("--mode", w2_args.mode, "'discrete' or 'gaussian'")
      ->check(CLI::IsMember({"discrete", "gaussian"}))
      ->required();
  w2->add_option("--a-support", w2_args.a_support, "First support points")
      ->delimiter(',');
  w2->add_option("--a-weights", w2_args.a_weights, "First weights")
      ->delimiter(',');
  w2->add_option("--b-support", w2_args.b_support, "Second support points")
      ->delimiter(',');
  w2->add_option("--b-weights", w2_args.b_weights, "Second weights")
      ->delimiter(',');
  w2->add_option("--mu-a", w2_args.mu_a, "First Gaussian mean")
      ->capture_default_str();
  w2->add_option("--var-a", w2_args.var_a, "First Gaussian variance")
      ->capture_default_str();
  w2->add_option("--mu-b", w2_args.mu_b, "Second Gaussian mean")
      ->capture_default_str();
  w2->add_option("--var-b", w2_args.var_b, "Second Gaussian variance")
      ->capture_default_str();
  add_output_flags(w2, w2_out);
  w2->callback([&] { rdc::cli::run_w2(w2_args, w2_out); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const rdc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const rdc::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const rdc::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
