#pragma once

// Dense revised simplex for LPs in equality standard form:
//   minimize c^T w  subject to  A w = b,  w >= 0.
// The problems solved here have at most a dozen rows but possibly millions of
// columns, so the constraint matrix is never materialized: callers provide a
// column oracle and the solver prices columns on demand. Two-phase method
// with artificial variables; Dantzig pricing with a Bland's-rule fallback
// against cycling; the basis inverse is refactored from scratch every
// iteration, which is cheap at these row counts and avoids drift.

#include <cstddef>
#include <utility>
#include <vector>

#include "rdc/errors.hpp"

namespace rdc {

class ColumnOracle {
public:
  virtual ~ColumnOracle() = default;
  virtual std::size_t num_cols() const = 0;
  // Writes the m entries of column j into out; out arrives sized to m.
  virtual void column(std::size_t j, std::vector<double>& out) const = 0;
  virtual double cost(std::size_t j) const = 0;
};

// Oracle over an explicitly stored list of columns, for small problems.
class DenseColumns : public ColumnOracle {
public:
  DenseColumns(std::vector<std::vector<double>> columns, std::vector<double> costs)
      : columns_(std::move(columns)), costs_(std::move(costs)) {}

  std::size_t num_cols() const override { return columns_.size(); }
  void column(std::size_t j, std::vector<double>& out) const override {
    out = columns_[j];
  }
  double cost(std::size_t j) const override { return costs_[j]; }

private:
  std::vector<std::vector<double>> columns_;
  std::vector<double> costs_;
};

struct SimplexOptions {
  double feas_tol = 1e-9;    // phase-1 objective at or below this is feasible
  double pivot_tol = 1e-11;  // smaller entries cannot serve as pivots
  double price_tol = 1e-9;   // reduced costs above -price_tol count as optimal
  std::size_t max_iters = 20000;
  int bland_after = 40;      // consecutive degenerate pivots before Bland's rule
};

struct SimplexSolution {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Optimal;
  double objective = 0.0;
  double infeasibility = 0.0;  // phase-1 residual when status is Infeasible
  // Basic structural variables with value above 1e-13, sorted by index.
  std::vector<std::pair<std::size_t, double>> support;
  std::vector<double> duals;  // row multipliers at the optimum
};

// Throws InternalError on iteration-limit or unbounded-direction failures
// (the LPs built in this project are bounded by construction).
SimplexSolution solve_lp(const ColumnOracle& cols, const std::vector<double>& b,
                         const SimplexOptions& opts = {});

}  // namespace rdc
