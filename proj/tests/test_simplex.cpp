// Column-oracle simplex: hand-checked optima, infeasibility and
// unboundedness detection, degenerate and redundant systems, and randomized
// instances verified through their own dual certificates.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "rdc/errors.hpp"
#include "rdc/simplex.hpp"

using namespace rdc;

namespace {

// Standard-form wrapper: max-style textbook instances are converted by hand
// in each case; this just builds the oracle.
DenseColumns make(std::vector<std::vector<double>> cols, std::vector<double> costs) {
  return DenseColumns(std::move(cols), std::move(costs));
}

}  // namespace

TEST_CASE("two-variable textbook optimum") {
  // minimize -x - 2y subject to x + y <= 4, x + 3y <= 6 (slacks s1, s2).
  const DenseColumns cols =
      make({{1, 1}, {1, 3}, {1, 0}, {0, 1}}, {-1, -2, 0, 0});
  const SimplexSolution sol = solve_lp(cols, {4, 6});
  REQUIRE(sol.status == SimplexSolution::Status::Optimal);
  CHECK(sol.objective == doctest::Approx(-5.0).epsilon(1e-12));
  REQUIRE(sol.support.size() == 2);
  CHECK(sol.support[0].first == 0);
  CHECK(sol.support[0].second == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sol.support[1].first == 1);
  CHECK(sol.support[1].second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conflicting equalities are reported infeasible with a residual") {
  // x + y = 2 and x + y = 3 cannot both hold.
  const DenseColumns cols = make({{1, 1}, {1, 1}}, {1, 1});
  const SimplexSolution sol = solve_lp(cols, {2, 3});
  CHECK(sol.status == SimplexSolution::Status::Infeasible);
  CHECK(sol.infeasibility >= 0.5);
}

TEST_CASE("duplicated rows do not break the basis") {
  const DenseColumns cols = make({{1, 1}, {1, 1}}, {1, 0});
  const SimplexSolution sol = solve_lp(cols, {2, 2});
  REQUIRE(sol.status == SimplexSolution::Status::Optimal);
  CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-12));
  REQUIRE(sol.support.size() == 1);
  CHECK(sol.support[0].first == 1);
  CHECK(sol.support[0].second == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("unbounded direction raises an internal error") {
  // minimize -x subject to x - y = 0: the ray x = y grows without bound.
  const DenseColumns cols = make({{1}, {-1}}, {-1, 0});
  CHECK_THROWS_AS(solve_lp(cols, {0}), InternalError);
}

TEST_CASE("negative right-hand sides are sign-normalized") {
  // -x = -3 with a free slack: feasible at x = 3.
  const DenseColumns cols = make({{-1}, {0}}, {1, 0});
  const SimplexSolution sol = solve_lp(cols, {-3});
  REQUIRE(sol.status == SimplexSolution::Status::Optimal);
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
  // Duals are reported against the original row orientation.
  REQUIRE(sol.duals.size() == 1);
  CHECK(sol.duals[0] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("degenerate vertex still reaches the optimum") {
  // minimize -x1 - x2 with x1 <= 1, x2 <= 1, x1 + x2 <= 2; the third
  // constraint is tight-but-redundant at the optimum (1, 1).
  const DenseColumns cols = make(
      {{1, 0, 1}, {0, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {-1, -1, 0, 0, 0});
  const SimplexSolution sol = solve_lp(cols, {1, 1, 2});
  REQUIRE(sol.status == SimplexSolution::Status::Optimal);
  CHECK(sol.objective == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("equality system with a single feasible point") {
  // x = 0.3, y = 0.7, x + y = 1 (third row redundant): the objective value
  // is fixed regardless of cost.
  const DenseColumns cols = make({{1, 0, 1}, {0, 1, 1}}, {5, -3});
  const SimplexSolution sol = solve_lp(cols, {0.3, 0.7, 1.0});
  REQUIRE(sol.status == SimplexSolution::Status::Optimal);
  CHECK(sol.objective == doctest::Approx(5 * 0.3 - 3 * 0.7).epsilon(1e-12));
}

TEST_CASE("random feasible instances are certified optimal by their duals") {
  std::mt19937_64 rng(20260818);
  std::uniform_real_distribution<double> entry(0.0, 2.0);
  std::uniform_real_distribution<double> cost(-1.0, 1.0);
  std::uniform_real_distribution<double> mass(0.0, 3.0);

  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + trial % 3;
    const std::size_t n = m + 2 + trial % 5;
    std::vector<std::vector<double>> cols(n, std::vector<double>(m));
    std::vector<double> costs(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) cols[j][i] = entry(rng);
      costs[j] = cost(rng);
    }
    // b = A x* for a known nonnegative point, so the instance is feasible.
    std::vector<double> x_star(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j % 2 == trial % 2) x_star[j] = mass(rng);
    }
    std::vector<double> b(m, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) b[i] += cols[j][i] * x_star[j];
    }
    double known_value = 0.0;
    for (std::size_t j = 0; j < n; ++j) known_value += costs[j] * x_star[j];

    const SimplexSolution sol = solve_lp(make(cols, costs), b);
    REQUIRE(sol.status == SimplexSolution::Status::Optimal);
    CHECK(sol.objective <= known_value + 1e-8);
    CHECK(sol.support.size() <= m);

    // Primal feasibility of the reported support.
    std::vector<double> ax(m, 0.0);
    double obj = 0.0;
    for (const auto& [j, w] : sol.support) {
      CHECK(w > 0.0);
      for (std::size_t i = 0; i < m; ++i) ax[i] += cols[j][i] * w;
      obj += costs[j] * w;
    }
    for (std::size_t i = 0; i < m; ++i) CHECK(ax[i] == doctest::Approx(b[i]).epsilon(1e-7));
    CHECK(obj == doctest::Approx(sol.objective).epsilon(1e-9));

    // Dual feasibility certifies global optimality: every reduced cost is
    // nonnegative up to tolerance.
    REQUIRE(sol.duals.size() == m);
    for (std::size_t j = 0; j < n; ++j) {
      double reduced = costs[j];
      for (std::size_t i = 0; i < m; ++i) reduced -= sol.duals[i] * cols[j][i];
      CHECK(reduced >= -1e-7);
    }
    // Strong duality: b . y equals the primal objective.
    double dual_obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) dual_obj += sol.duals[i] * b[i];
    CHECK(dual_obj == doctest::Approx(sol.objective).epsilon(1e-7));
  }
}

TEST_CASE("solutions are deterministic") {
  const DenseColumns cols =
      make({{1, 1}, {1, 3}, {1, 0}, {0, 1}}, {-1, -2, 0, 0});
  const SimplexSolution a = solve_lp(cols, {4, 6});
  const SimplexSolution b = solve_lp(cols, {4, 6});
  CHECK(a.objective == b.objective);
  REQUIRE(a.support.size() == b.support.size());
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    CHECK(a.support[i].first == b.support[i].first);
    CHECK(a.support[i].second == b.support[i].second);
  }
}
