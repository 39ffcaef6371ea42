#include "rdc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Jordan inverse with partial pivoting. Throws InternalError on a
// numerically singular basis, which a valid pivot sequence cannot produce.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
  const std::size_t m = a.size();
  std::vector<std::vector<double>> inv(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) inv[i][i] = 1.0;

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-13) {
      throw InternalError("simplex: singular basis matrix");
    }
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const double scale = 1.0 / a[col][col];
    for (std::size_t j = 0; j < m; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double factor = a[r][col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

struct Workspace {
  const ColumnOracle& cols;
  std::size_t n;                  // structural columns
  std::size_t m;                  // rows
  std::vector<double> b;          // sign-normalized so b >= 0
  std::vector<double> row_sign;   // original row orientation
  std::vector<std::size_t> basis; // values >= n denote artificial (index - n)
  std::vector<char> in_basis;     // size n + m

  bool artificial(std::size_t var) const { return var >= n; }

  // Column of the (sign-normalized) constraint matrix for a variable.
  void fetch(std::size_t var, std::vector<double>& out) const {
    if (artificial(var)) {
      std::fill(out.begin(), out.end(), 0.0);
      out[var - n] = 1.0;
      return;
    }
    cols.column(var, out);
    for (std::size_t i = 0; i < m; ++i) out[i] *= row_sign[i];
  }
};

}  // namespace

SimplexSolution solve_lp(const ColumnOracle& cols, const std::vector<double>& b,
                         const SimplexOptions& opts) {
  const std::size_t m = b.size();
  const std::size_t n = cols.num_cols();
  if (m == 0) throw ConfigError("solve_lp: no rows");

  Workspace ws{cols, n, m, b, std::vector<double>(m, 1.0),
               std::vector<std::size_t>(m), std::vector<char>(n + m, 0)};
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      ws.b[i] = -b[i];
      ws.row_sign[i] = -1.0;
    }
    ws.basis[i] = n + i;  // all-artificial starting basis
    ws.in_basis[n + i] = 1;
  }

  std::vector<double> col_buf(m), x_basic(m), y(m), direction(m);
  std::vector<std::vector<double>> basis_matrix(m, std::vector<double>(m));

  auto basic_cost = [&](std::size_t var, bool phase1) -> double {
    if (ws.artificial(var)) return phase1 ? 1.0 : 0.0;
    return phase1 ? 0.0 : cols.cost(var);
  };

  std::size_t iters = 0;
  int degenerate_streak = 0;

  auto run_phase = [&](bool phase1) {
    for (;;) {
      if (++iters > opts.max_iters) {
        throw InternalError("simplex: iteration limit exceeded");
      }

      for (std::size_t i = 0; i < m; ++i) {
        ws.fetch(ws.basis[i], col_buf);
        for (std::size_t r = 0; r < m; ++r) basis_matrix[r][i] = col_buf[r];
      }
      const auto binv = invert(basis_matrix);

      for (std::size_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < m; ++j) v += binv[i][j] * ws.b[j];
        x_basic[i] = v;
      }
      for (std::size_t j = 0; j < m; ++j) {
        double v = 0.0;
        for (std::size_t i = 0; i < m; ++i) v += basic_cost(ws.basis[i], phase1) * binv[i][j];
        y[j] = v;
      }

      // Pricing: Dantzig by default, Bland's smallest-index rule after a run
      // of degenerate pivots. Artificials never re-enter.
      const bool bland = degenerate_streak > opts.bland_after;
      std::size_t enter = n;
      double best_rc = -opts.price_tol;
      for (std::size_t j = 0; j < n; ++j) {
        if (ws.in_basis[j]) continue;
        ws.fetch(j, col_buf);
        double rc = phase1 ? 0.0 : cols.cost(j);
        for (std::size_t i = 0; i < m; ++i) rc -= y[i] * col_buf[i];
        if (rc < best_rc) {
          enter = j;
          if (bland) break;
          best_rc = rc;
        }
      }
      if (enter == n) return;  // phase optimal

      ws.fetch(enter, col_buf);
      for (std::size_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < m; ++j) v += binv[i][j] * col_buf[j];
        direction[i] = v;
      }

      // Ratio test. In phase 2 a basic artificial sits at value zero and must
      // stay there, so any row movement pivots it out at step zero.
      double theta = kInf;
      std::size_t leave = m;
      bool leave_artificial = false;
      for (std::size_t i = 0; i < m; ++i) {
        const bool art = ws.artificial(ws.basis[i]);
        double candidate;
        if (!phase1 && art && std::abs(direction[i]) > opts.pivot_tol) {
          candidate = 0.0;
        } else if (direction[i] > opts.pivot_tol) {
          candidate = std::max(0.0, x_basic[i]) / direction[i];
        } else {
          continue;
        }
        bool better = candidate < theta - 1e-15;
        if (!better && leave < m && candidate <= theta + 1e-15) {
          // Tie: drive artificials out first, then the smallest variable
          // index for a stable, cycle-resistant choice.
          if (art != leave_artificial) {
            better = art;
          } else {
            better = ws.basis[i] < ws.basis[leave];
          }
        }
        if (better) {
          theta = candidate;
          leave = i;
          leave_artificial = art;
        }
      }
      if (leave == m) {
        throw InternalError("simplex: unbounded direction in a bounded problem");
      }

      degenerate_streak = theta <= 1e-13 ? degenerate_streak + 1 : 0;
      ws.in_basis[ws.basis[leave]] = 0;
      ws.basis[leave] = enter;
      ws.in_basis[enter] = 1;
    }
  };

  run_phase(true);

  double phase1_obj = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (ws.artificial(ws.basis[i])) phase1_obj += std::max(0.0, x_basic[i]);
  }
  SimplexSolution sol;
  if (phase1_obj > opts.feas_tol) {
    sol.status = SimplexSolution::Status::Infeasible;
    sol.infeasibility = phase1_obj;
    return sol;
  }

  degenerate_streak = 0;
  run_phase(false);

  sol.status = SimplexSolution::Status::Optimal;
  sol.objective = 0.0;
  sol.support.clear();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t var = ws.basis[i];
    if (ws.artificial(var)) continue;
    const double value = std::max(0.0, x_basic[i]);
    sol.objective += cols.cost(var) * value;
    if (value > 1e-13) sol.support.emplace_back(var, value);
  }
  std::sort(sol.support.begin(), sol.support.end());
  sol.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.duals[i] = y[i] * ws.row_sign[i];
  return sol;
}

}  // namespace rdc
