#include "rdc/discrete_dcr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include "rdc/errors.hpp"
#include "rdc/rng.hpp"
#include "rdc/simplex.hpp"

namespace rdc {

namespace {

constexpr double kLpTol = 1e-7;

// Columns of the mixture LP: one per atom, then a slack for the
// classification row and a surplus for the entropy row. Rows are the n
// marginal-matching equalities, the classification budget, the entropy
// floor, and the total-mass row, in that order.
class MixtureColumns final : public ColumnOracle {
 public:
  explicit MixtureColumns(const AtomGrid& grid, std::size_t n)
      : grid_(grid), n_(n) {}

  std::size_t num_rows() const { return n_ + 3; }

  std::size_t num_cols() const override { return grid_.atoms.size() + 2; }

  void column(std::size_t j, std::vector<double>& out) const override {
    out.assign(num_rows(), 0.0);
    const std::size_t n_atoms = grid_.atoms.size();
    if (j < n_atoms) {
      const Atom& a = grid_.atoms[j];
      for (std::size_t i = 0; i < n_; ++i) out[i] = a.posterior[i];
      out[n_] = a.class_entropy;
      out[n_ + 1] = a.entropy;
      out[n_ + 2] = 1.0;
    } else if (j == n_atoms) {
      out[n_] = 1.0;  // classification slack
    } else {
      out[n_ + 1] = -1.0;  // entropy surplus
    }
  }

  double cost(std::size_t j) const override {
    return j < grid_.atoms.size() ? grid_.atoms[j].distortion : 0.0;
  }

 private:
  const AtomGrid& grid_;
  std::size_t n_;
};

}  // namespace

std::size_t grid_atom_count(std::size_t n, std::size_t k, int resolution) {
  if (n == 0 || k == 0 || resolution < 1)
    throw ConfigError("grid_atom_count: need n >= 1, k >= 1, resolution >= 1");
  // binomial(g + n - 1, n - 1) by the multiplicative formula, capped so the
  // intermediate product cannot overflow.
  const std::size_t cap = std::numeric_limits<std::size_t>::max() / 2;
  std::size_t comps = 1;
  const std::size_t g = static_cast<std::size_t>(resolution);
  for (std::size_t i = 1; i < n; ++i) {
    if (comps > cap / (g + i)) return std::numeric_limits<std::size_t>::max();
    comps = comps * (g + i) / i;
  }
  if (comps > cap / k) return std::numeric_limits<std::size_t>::max();
  return comps * k;
}

AtomGrid build_grid(const DiscreteSource& src, int resolution,
                    std::size_t atom_budget) {
  if (resolution < 1) throw ConfigError("build_grid: resolution must be >= 1");
  const std::size_t n = src.n();
  const std::size_t k = src.k();
  const std::size_t total = grid_atom_count(n, k, resolution);
  if (total > atom_budget) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "build_grid: %zu atoms at resolution %d exceed the budget of "
                  "%zu; lower the resolution",
                  total, resolution, atom_budget);
    throw AtomBudgetExceeded(buf);
  }

  // All compositions of `resolution` into n nonnegative cells, lexicographic
  // with the first cell varying slowest.
  std::vector<std::vector<double>> posteriors;
  posteriors.reserve(total / k);
  std::vector<int> cells(n, 0);
  const double g = static_cast<double>(resolution);
  const auto emit = [&] {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<double>(cells[i]) / g;
    posteriors.push_back(std::move(p));
  };
  const std::function<void(std::size_t, int)> walk = [&](std::size_t cell,
                                                         int left) {
    if (cell + 1 == n) {
      cells[cell] = left;
      emit();
      return;
    }
    for (int c = 0; c <= left; ++c) {
      cells[cell] = c;
      walk(cell + 1, left - c);
    }
  };
  walk(0, resolution);

  AtomGrid grid;
  grid.resolution = resolution;
  grid.atoms.reserve(total);
  const std::size_t m = src.m();
  std::vector<double> label(m);
  for (std::size_t alpha = 0; alpha < k; ++alpha) {
    for (const std::vector<double>& p : posteriors) {
      Atom a;
      a.recon_index = alpha;
      a.posterior = p;
      a.entropy = entropy(p);
      std::fill(label.begin(), label.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) label[j] += src.t[j][i] * p[i];
      a.class_entropy = entropy(label);
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += p[i] * src.distortion[i][alpha];
      a.distortion = d;
      grid.atoms.push_back(std::move(a));
    }
  }
  return grid;
}

DcrSolution solve_dcr(const DiscreteSource& src, const AtomGrid& grid, double C,
                      double R) {
  if (!(C >= 0.0)) throw ConfigError("solve_dcr: classification budget must be >= 0");
  if (!(R >= 0.0)) throw ConfigError("solve_dcr: rate budget must be >= 0");
  if (grid.atoms.empty()) throw ConfigError("solve_dcr: empty atom grid");
  const std::size_t n = src.n();

  MixtureColumns cols(grid, n);
  std::vector<double> b(n + 3);
  for (std::size_t i = 0; i < n; ++i) b[i] = src.q[i];
  b[n] = C;
  b[n + 1] = src.source_entropy() - R;
  b[n + 2] = 1.0;

  const SimplexSolution sol = solve_lp(cols, b);
  if (sol.status == SimplexSolution::Status::Infeasible) {
    const double h_sx = src.conditional_entropy();
    char buf[240];
    if (C < h_sx - 1e-12) {
      std::snprintf(buf, sizeof buf,
                    "solve_dcr: classification budget %.17g nats is below the "
                    "conditional label entropy %.17g, which no test channel "
                    "can beat at any rate or resolution",
                    C, h_sx);
      throw LpInfeasible(buf, true);
    }
    std::snprintf(buf, sizeof buf,
                  "solve_dcr: no mixture at resolution %d meets C=%.17g, "
                  "R=%.17g (phase-1 residual %.3g); a finer grid or a larger "
                  "rate budget may close the gap",
                  grid.resolution, C, R, sol.infeasibility);
    throw LpInfeasible(buf, false);
  }

  DcrSolution out;
  out.d = std::max(0.0, sol.objective);
  const std::size_t n_atoms = grid.atoms.size();
  double ce = 0.0;
  double ent = 0.0;
  for (const auto& [idx, w] : sol.support) {
    if (idx >= n_atoms) continue;  // slack or surplus column
    out.weights.emplace_back(idx, w);
    ce += w * grid.atoms[idx].class_entropy;
    ent += w * grid.atoms[idx].entropy;
  }
  out.class_entropy = ce;
  out.mutual_information = std::max(0.0, src.source_entropy() - ent);
  return out;
}

ConvexityReport check_convexity(const DiscreteSource& src, const AtomGrid& grid,
                                int trials, std::uint64_t seed) {
  if (trials < 10) throw ConfigError("check_convexity: need at least 10 trials");
  GaussianSampler rng(seed);
  const double h_q = src.source_entropy();
  const double h_sx = src.conditional_entropy();
  const double h_s = src.label_entropy();

  const auto sample_feasible = [&](double& c, double& r) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      c = h_sx + (h_s - h_sx) * rng.uniform();
      r = h_q * rng.uniform();
      try {
        solve_dcr(src, grid, c, r);
        return;
      } catch (const LpInfeasible&) {
      }
    }
    throw InternalError(
        "check_convexity: could not sample a feasible budget pair");
  };

  ConvexityReport report;
  report.midpoint_trials = trials;
  for (int t = 0; t < trials; ++t) {
    double c1, r1, c2, r2;
    sample_feasible(c1, r1);
    sample_feasible(c2, r2);
    const double d1 = solve_dcr(src, grid, c1, r1).d;
    const double d2 = solve_dcr(src, grid, c2, r2).d;
    const double d_mid =
        solve_dcr(src, grid, 0.5 * (c1 + c2), 0.5 * (r1 + r2)).d;
    report.max_convexity_violation = std::max(
        report.max_convexity_violation, d_mid - 0.5 * (d1 + d2));
  }

  const int sweeps = std::max(2, trials / 4);
  report.monotonicity_sweeps = sweeps;
  constexpr int kSweepPoints = 6;
  for (int s = 0; s < sweeps; ++s) {
    double c0, r0;
    sample_feasible(c0, r0);
    const bool sweep_c = (s % 2 == 0);
    const double top = sweep_c ? h_s : h_q;
    const double anchor = sweep_c ? c0 : r0;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSweepPoints; ++i) {
      const double v =
          anchor + (top - anchor) * static_cast<double>(i) / (kSweepPoints - 1);
      const double d = sweep_c ? solve_dcr(src, grid, v, r0).d
                               : solve_dcr(src, grid, c0, v).d;
      report.max_monotonicity_violation =
          std::max(report.max_monotonicity_violation, d - prev);
      prev = d;
    }
  }
  return report;
}

}  // namespace rdc
