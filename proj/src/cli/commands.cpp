#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "cli/csv.hpp"
#include "cli/report.hpp"
#include "rdc/bounds.hpp"
#include "rdc/discrete_dcr.hpp"
#include "rdc/errors.hpp"
#include "rdc/fixed_rep_region.hpp"
#include "rdc/gaussian_rdc.hpp"
#include "rdc/gaussian_universal.hpp"
#include "rdc/transport.hpp"

namespace rdc::cli {

namespace {

std::string csv_path_or(const OutputArgs& out, const std::string& command) {
  return out.csv_path.empty() ? command + ".csv" : out.csv_path;
}

std::string report_path_or(const OutputArgs& out, const std::string& command) {
  return out.report_path.empty() ? command + ".report.json" : out.report_path;
}

void echo_gaussian_params(RunReport& rep, const GaussianModelArgs& m) {
  rep.set("param_mu_x", m.mu_x);
  rep.set("param_sigma2_x", m.sigma2_x);
  rep.set("param_mu_s", m.mu_s);
  rep.set("param_sigma2_s", m.sigma2_s);
  rep.set("param_theta1", m.theta1);
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ',';
    s += CsvWriter::num(v[i]);
  }
  return s;
}

}  // namespace

double unit_scale(const std::string& units) {
  if (units == "nats") return 1.0;
  if (units == "bits") return 1.0 / std::log(2.0);
  throw ConfigError("units must be 'nats' or 'bits', got '" + units + "'");
}

GaussianPair GaussianModelArgs::pair() const {
  GaussianPair p{mu_x, sigma2_x, mu_s, sigma2_s, theta1};
  validate_gaussian(p);
  return p;
}

DiscreteSource DiscreteModelArgs::source() const {
  if (q.empty()) throw ConfigError("source distribution --q is required");
  if (labels == 0) throw ConfigError("--labels must be at least 1");
  const std::size_t n = q.size();
  if (t_flat.size() != labels * n) {
    char buf[140];
    std::snprintf(buf, sizeof buf,
                  "--t needs %zu entries (%zu labels x %zu letters), got %zu",
                  labels * n, labels, n, t_flat.size());
    throw ConfigError(buf);
  }
  DiscreteSource src;
  src.q = q;
  src.t.assign(labels, std::vector<double>(n));
  for (std::size_t j = 0; j < labels; ++j)
    for (std::size_t i = 0; i < n; ++i) src.t[j][i] = t_flat[j * n + i];
  if (values.empty()) {
    src.values.resize(n);
    std::iota(src.values.begin(), src.values.end(), 0.0);
  } else {
    if (values.size() != n)
      throw ConfigError("--values must have one entry per source letter");
    src.values = values;
  }
  if (!recon_values.empty()) src.reconstruction_values = recon_values;
  src.finalize();
  return src;
}

void run_gaussian_dcr(const GaussianModelArgs& model, double rate, int points,
                      const OutputArgs& out) {
  const GaussianPair p = model.pair();
  const double s = unit_scale(out.units);
  const TradeoffCurve curve = sample_dcr_curve(p, rate, points);

  const std::string csv_path = csv_path_or(out, "gaussian-dcr");
  CsvWriter csv(csv_path, {"C", "R", "D", "case"});
  for (const TradeoffPoint& pt : curve.points)
    csv.row({CsvWriter::num(pt.c * s), CsvWriter::num(pt.r * s),
             CsvWriter::num(pt.d), to_string(pt.case_label)});

  RunReport rep("gaussian-dcr", out.units);
  echo_gaussian_params(rep, model);
  rep.set("param_rate", rate);
  rep.set("param_points", static_cast<std::int64_t>(points));
  rep.set("c_feasible", feasibility_threshold(p) * s);
  rep.set("label_entropy", p.label_entropy() * s);
  rep.set("n_points", curve.points.size());
  rep.set("d_first", curve.points.front().d);
  rep.set("d_last", curve.points.back().d);
  rep.set("csv_path", csv_path);
  rep.write(report_path_or(out, "gaussian-dcr"));
}

void run_gaussian_rdc(const GaussianModelArgs& model, double classification,
                      double d_lo, double d_hi, int points,
                      const OutputArgs& out) {
  const GaussianPair p = model.pair();
  const double s = unit_scale(out.units);
  const double c = std::isnan(classification) ? p.label_entropy() : classification;
  const double lo = std::isnan(d_lo) ? 0.01 * p.sigma2_x : d_lo;
  const double hi = std::isnan(d_hi) ? 1.2 * p.sigma2_x : d_hi;
  const TradeoffCurve curve = sample_rdc_curve(p, c, lo, hi, points);

  const std::string csv_path = csv_path_or(out, "gaussian-rdc");
  CsvWriter csv(csv_path, {"D", "C", "R", "case"});
  for (const TradeoffPoint& pt : curve.points)
    csv.row({CsvWriter::num(pt.d), CsvWriter::num(pt.c * s),
             CsvWriter::num(pt.r * s), to_string(pt.case_label)});

  RunReport rep("gaussian-rdc", out.units);
  echo_gaussian_params(rep, model);
  rep.set("param_classification", c);
  rep.set("param_d_lo", lo);
  rep.set("param_d_hi", hi);
  rep.set("param_points", static_cast<std::int64_t>(points));
  rep.set("n_points", curve.points.size());
  rep.set("r_first", curve.points.front().r * s);
  rep.set("r_last", curve.points.back().r * s);
  rep.set("csv_path", csv_path);
  rep.write(report_path_or(out, "gaussian-rdc"));
}

void run_gaussian_universal(const GaussianModelArgs& model,
                            const std::vector<double>& rates, int points,
                            std::size_t mc_samples, std::uint64_t seed,
                            const OutputArgs& out) {
  const GaussianPair p = model.pair();
  const double s = unit_scale(out.units);
  const NoPenaltyReport report = verify_no_penalty(p, rates, points);

  const std::string csv_path = csv_path_or(out, "gaussian-universal");
  CsvWriter csv(csv_path, {"rate", "target_D", "target_C", "achieved_D",
                           "achieved_C", "gamma"});
  for (const DecoderCheck& ck : report.checks)
    csv.row({CsvWriter::num(ck.rate * s), CsvWriter::num(ck.target_d),
             CsvWriter::num(ck.target_c * s), CsvWriter::num(ck.achieved_d),
             CsvWriter::num(ck.achieved_c * s), CsvWriter::num(ck.gamma)});

  RunReport rep("gaussian-universal", out.units);
  echo_gaussian_params(rep, model);
  rep.set("param_rates", join_numbers(rates));
  rep.set("param_points", static_cast<std::int64_t>(points));
  rep.set("param_mc_samples", mc_samples);
  rep.set("param_seed", mc_samples > 0 ? seed : 0);
  rep.set("n_checks", report.checks.size());
  rep.set("max_d_violation", report.max_d_violation);
  rep.set("max_c_violation", report.max_c_violation * s);

  if (mc_samples > 0) {
    // The report's decoders all share the representation built at the
    // largest rate; sample against that same representation.
    const GaussianRepresentation z = build_representation(
        p, *std::max_element(rates.begin(), rates.end()));
    for (std::size_t r = 0; r < rates.size(); ++r) {
      const DecoderCheck& ck =
          report.checks.at(r * static_cast<std::size_t>(points) +
                           static_cast<std::size_t>(points) / 2);
      const UniversalDecoder dec = decoder_for(p, z, ck.target_d, ck.target_c);
      const MonteCarloEstimate mc =
          monte_carlo_check(p, dec, z, mc_samples, seed + r);
      const std::string prefix = "mc_" + std::to_string(r) + "_";
      rep.set(prefix + "rate", ck.rate * s);
      rep.set(prefix + "d_target", ck.target_d);
      rep.set(prefix + "d_hat", mc.d_hat);
      rep.set(prefix + "c_plugin", plugin_class_loss_limit(p, z, dec) * s);
      rep.set(prefix + "c_hat", mc.c_hat * s);
    }
  }
  rep.set("csv_path", csv_path);
  rep.write(report_path_or(out, "gaussian-universal"));
}

void run_discrete_dcr(const DiscreteModelArgs& model, int grid, double rate,
                      double c_lo, double c_hi, int points,
                      const OutputArgs& out) {
  if (points < 1) throw ConfigError("--points must be at least 1");
  const DiscreteSource src = model.source();
  const double s = unit_scale(out.units);
  const AtomGrid atoms = build_grid(src, grid);
  const double lo = std::isnan(c_lo) ? src.conditional_entropy() : c_lo;
  const double hi = std::isnan(c_hi) ? src.label_entropy() : c_hi;
  if (hi < lo)
    throw ConfigError("classification sweep upper end is below the lower end");

  const std::string csv_path = csv_path_or(out, "discrete-dcr");
  CsvWriter csv(csv_path, {"C", "R", "D", "lp_status"});
  std::size_t n_infeasible = 0;
  for (int i = 0; i < points; ++i) {
    const double c =
        points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    double d = std::numeric_limits<double>::quiet_NaN();
    std::string status = "optimal";
    try {
      d = solve_dcr(src, atoms, c, rate).d;
    } catch (const LpInfeasible& e) {
      status = e.provably_infeasible ? "infeasible_provable" : "infeasible_grid";
      ++n_infeasible;
    }
    csv.row({CsvWriter::num(c * s), CsvWriter::num(rate * s), CsvWriter::num(d),
             status});
  }

  RunReport rep("discrete-dcr", out.units);
  rep.set("param_grid", static_cast<std::int64_t>(grid));
  rep.set("param_rate", rate);
  rep.set("param_points", static_cast<std::int64_t>(points));
  rep.set("n_atoms", atoms.atoms.size());
  rep.set("n_infeasible", n_infeasible);
  rep.set("source_entropy", src.source_entropy() * s);
  rep.set("label_entropy", src.label_entropy() * s);
  rep.set("conditional_label_entropy", src.conditional_entropy() * s);
  rep.set("csv_path", csv_path);
  rep.write(report_path_or(out, "discrete-dcr"));
}

void run_region(const DiscreteModelArgs& model, const RegionArgs& args,
                const OutputArgs& out) {
  DiscreteSource src = model.source();
  const std::size_t n = src.n();
  const double s = unit_scale(out.units);

  FixedRepresentation rep_model;
  rep_model.src = src;
  std::string channel_source;
  if (!args.channel_flat.empty()) {
    channel_source = "explicit";
    if (args.z_letters == 0 || args.channel_flat.size() != args.z_letters * n)
      throw ConfigError(
          "--channel needs --z-letters rows of one entry per source letter");
    rep_model.channel.assign(args.z_letters, std::vector<double>(n));
    for (std::size_t z = 0; z < args.z_letters; ++z)
      for (std::size_t i = 0; i < n; ++i)
        rep_model.channel[z][i] = args.channel_flat[z * n + i];
  } else {
    channel_source = "extracted";
    const AtomGrid atoms = build_grid(src, args.grid);
    const double c_budget =
        args.classification < 0 ? src.label_entropy() : args.classification;
    const DcrSolution sol = solve_dcr(src, atoms, c_budget, args.rate);
    const std::size_t nz = sol.weights.size();
    rep_model.channel.assign(nz, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < nz; ++j) {
      const auto& [idx, w] = sol.weights[j];
      for (std::size_t i = 0; i < n; ++i)
        if (src.q[i] > 0.0)
          rep_model.channel[j][i] = w * atoms.atoms[idx].posterior[i] / src.q[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (src.q[i] <= 0.0) {
        rep_model.channel[0][i] = 1.0;
        continue;
      }
      double col = 0.0;
      for (std::size_t z = 0; z < nz; ++z) col += rep_model.channel[z][i];
      if (std::abs(col - 1.0) > 1e-6)
        throw InternalError(
            "extracted channel does not reproduce the source marginal");
      for (std::size_t z = 0; z < nz; ++z) rep_model.channel[z][i] /= col;
    }
  }
  rep_model.finalize();

  const std::vector<RegionPoint> inner =
      decoder_oracle(rep_model, args.stochastic_grid);
  const auto [ext_a, ext_b] = extreme_points(rep_model);
  const std::vector<double> charged = charged_entropies(rep_model);

  double inner_c_min = std::numeric_limits<double>::infinity();
  double inner_c_max = -std::numeric_limits<double>::infinity();
  for (const RegionPoint& pt : inner) {
    inner_c_min = std::min(inner_c_min, pt.c);
    inner_c_max = std::max(inner_c_max, pt.c);
  }
  const double c_lo =
      std::max(*std::min_element(charged.begin(), charged.end()), inner_c_min);
  const double c_hi = std::max({ext_a.c, inner_c_max, c_lo});
  std::vector<double> c_grid(static_cast<std::size_t>(std::max(1, args.c_points)));
  for (std::size_t i = 0; i < c_grid.size(); ++i)
    c_grid[i] = c_grid.size() == 1
                    ? c_lo
                    : c_lo + (c_hi - c_lo) * static_cast<double>(i) /
                                 (c_grid.size() - 1);
  const std::vector<RegionPoint> outer = outer_bound_curve(rep_model, c_grid);

  const std::string csv_path = csv_path_or(out, "region");
  CsvWriter csv(csv_path, {"kind", "D", "C"});
  csv.row({"extreme", CsvWriter::num(ext_a.d), CsvWriter::num(ext_a.c * s)});
  csv.row({"extreme", CsvWriter::num(ext_b.d), CsvWriter::num(ext_b.c * s)});
  for (const RegionPoint& pt : inner)
    csv.row({"inner", CsvWriter::num(pt.d), CsvWriter::num(pt.c * s)});
  for (const RegionPoint& pt : outer)
    csv.row({"outer", CsvWriter::num(pt.d), CsvWriter::num(pt.c * s)});

  RunReport rep("region", out.units);
  rep.set("param_channel", channel_source);
  rep.set("param_stochastic_grid",
          static_cast<std::int64_t>(args.stochastic_grid));
  rep.set("z_count", rep_model.z_count());
  rep.set("n_inner", inner.size());
  rep.set("n_outer", outer.size());
  rep.set("extreme_a_d", ext_a.d);
  rep.set("extreme_a_c", ext_a.c * s);
  rep.set("extreme_b_d", ext_b.d);
  rep.set("extreme_b_c", ext_b.c * s);
  rep.set("mmse_distortion", rep_model.mmse_distortion);
  rep.set("convention_sound", convention_sound(rep_model));
  rep.set("csv_path", csv_path);
  rep.write(report_path_or(out, "region"));
}

void run_bound_check(const GaussianModelArgs& model, const BoundCheckArgs& args,
                     const OutputArgs& out) {
  RunReport rep("bound-check", out.units);
  rep.set("param_mode", args.mode);
  PosteriorSamplingResult result;
  if (args.mode == "discrete") {
    if (args.nx == 0 || args.joint_flat.empty() ||
        args.joint_flat.size() % args.nx != 0)
      throw ConfigError("--joint needs --nx rows of equal length");
    const std::size_t n_m = args.joint_flat.size() / args.nx;
    std::vector<std::vector<double>> joint(args.nx, std::vector<double>(n_m));
    for (std::size_t i = 0; i < args.nx; ++i)
      for (std::size_t m = 0; m < n_m; ++m)
        joint[i][m] = args.joint_flat[i * n_m + m];
    std::vector<double> values = args.values;
    if (values.empty()) {
      values.resize(args.nx);
      std::iota(values.begin(), values.end(), 0.0);
    }
    result = posterior_sampling_check_discrete(joint, values);
    rep.set("marginal_gap", result.marginal_gap);
  } else if (args.mode == "gaussian") {
    echo_gaussian_params(rep, model);
    rep.set("param_rate", args.rate);
    rep.set("param_samples", args.samples);
    rep.set("param_seed", args.seed);
    result = posterior_sampling_check_gaussian(model.pair(), args.rate,
                                               args.samples, args.seed);
    rep.set("se", result.se);
  } else {
    throw ConfigError("--mode must be 'discrete' or 'gaussian'");
  }
  rep.set("d_min", result.d_min);
  rep.set("d_ps", result.d_ps);
  rep.set("ratio", result.ratio);
  rep.set("psnr_drop_db", result.psnr_drop_db);
  rep.write(report_path_or(out, "bound-check"));
}

void run_w2(const W2Args& args, const OutputArgs& out) {
  RunReport rep("w2", out.units);
  rep.set("param_mode", args.mode);
  double cost = 0.0;
  if (args.mode == "discrete") {
    const TransportPlan plan = w2_discrete({args.a_support, args.a_weights},
                                           {args.b_support, args.b_weights});
    cost = plan.cost;
    rep.set("n_entries", plan.entries.size());
  } else if (args.mode == "gaussian") {
    cost = w2_gaussian(args.mu_a, args.var_a, args.mu_b, args.var_b);
  } else {
    throw ConfigError("--mode must be 'discrete' or 'gaussian'");
  }
  const std::string csv_path = csv_path_or(out, "w2");
  CsvWriter csv(csv_path, {"cost"});
  csv.row({CsvWriter::num(cost)});
  rep.set("cost", cost);
  rep.set("csv_path", csv_path);
  rep.write(report_path_or(out, "w2"));
}

}  // namespace rdc::cli
