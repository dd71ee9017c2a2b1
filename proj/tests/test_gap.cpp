#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "oracles.hpp"
#include "rodsym/errors.hpp"
#include "rodsym/gap.hpp"

using namespace rodsym;

namespace {

const Interval kRod = rod_domain();

double drop_closed_form(double a) {
  return kPi * kPi * (5 + 2 * a * kPi) / (8 * (1 + a * kPi));
}

double sampled_gap(double alpha, double b) {
  const auto u = robin_solve(StepFunction::indicator(kRod, b - kPi / 2, b + kPi / 2), RobinParam(alpha));
  const auto r = oracle::sampled_range([&](double x) { return u(x); }, -kPi, kPi, 200000);
  return r.max - r.min;
}

}  // namespace

TEST(ExampleSolutions, MatchSolverAndClosedForms) {
  for (double a : {0.1, 0.5, 1.0, 10.0}) {
    const RobinParam p(a);
    const auto [u, v] = example_solutions(p);
    EXPECT_LT(sup_distance(u, robin_solve(StepFunction::indicator(kRod, -kPi, 0), p)), 1e-10);
    EXPECT_LT(sup_distance(v, robin_solve(StepFunction::indicator(kRod, -kPi / 2, kPi / 2), p)), 1e-10);
    EXPECT_NEAR(extrema(v).osc(), 3 * kPi * kPi / 8, 1e-10);
    EXPECT_NEAR(u(-kPi / 2) - u(kPi), drop_closed_form(a), 1e-10);
    if (a < 2 / kPi) {
      EXPECT_LT(extrema(v).osc(), extrema(u).osc());
    }
  }
  // The drop exceeds 3 pi^2 / 8 exactly when alpha < 2 / pi.
  EXPECT_GT(drop_closed_form(2 / kPi - 1e-3), 3 * kPi * kPi / 8);
  EXPECT_LT(drop_closed_form(2 / kPi + 1e-3), 3 * kPi * kPi / 8);
}

TEST(GapFormula, Examples) {
  for (double a : {0.01, 0.3, 1.0, 7.0, 100.0}) {
    EXPECT_NEAR(gap_formula(a, 0.0), 3 * kPi * kPi / 8, 1e-12);
    for (double b : {0.2, 0.9, kPi / 2}) EXPECT_EQ(gap_formula(a, b), gap_formula(a, -b));
  }
  EXPECT_THROW(gap_formula(1.0, 2.0), ParameterError);
  EXPECT_THROW(gap_formula(0.0, 0.0), ParameterError);
  // alpha = 1 lies above the threshold, so the end position is not optimal.
  EXPECT_LT(gap_formula(1.0, -kPi / 2), gap_formula(1.0, *b_crit(1.0)));
}

TEST(GapFormula, MatchesSampledSolutions) {
  for (double a : {0.05, 0.3, 1.0, 20.0}) {
    for (double b : {-kPi / 2, -1.0, -0.3, 0.0, 0.6, kPi / 2}) {
      EXPECT_NEAR(gap_formula(a, b), sampled_gap(a, b), 1e-6) << a << " " << b;
      EXPECT_NEAR(gap_numeric(RobinParam(a), b), gap_formula(a, b), 1e-8);
    }
  }
}

TEST(GapDerivatives, ClosedForms) {
  for (double a : {0.01, 1.0, 100.0}) {
    const double s = 1 + a * kPi;
    EXPECT_LT(gap_derivatives(a, -0.4).d2, 0.0);
    EXPECT_NEAR(gap_derivatives(a, -kPi / 2).d1, kPi * (-4 + 3 * a * a * kPi * kPi) / (8 * s * s), 1e-12);
    EXPECT_NEAR(gap_derivatives(a, 0.0).d1, -kPi / (2 * s), 1e-12);
    EXPECT_EQ(gap_derivatives(a, -kPi / 2).d1 > 0, a > kGapThreshold);
  }
}

TEST(GapDerivatives, MatchFiniteDifferences) {
  const double h = 1e-5;
  for (double a : {0.2, 1.0, 5.0}) {
    for (double b : {-1.2, -0.5, 0.4, 1.1}) {
      const auto d = gap_derivatives(a, b);
      const double fd1 = (gap_formula(a, b + h) - gap_formula(a, b - h)) / (2 * h);
      const double fd2 = (gap_formula(a, b + h) - 2 * gap_formula(a, b) + gap_formula(a, b - h)) / (h * h);
      EXPECT_NEAR(d.d1, fd1, 1e-8);
      if (b < 0) EXPECT_NEAR(d.d2, fd2, 1e-4);
    }
  }
}

TEST(BCrit, Examples) {
  EXPECT_NEAR(kGapThreshold, 0.367552597, 1e-9);
  EXPECT_NEAR(*b_crit(1.0), -2 * (1 + kPi) / (4 + 3 * kPi), 1e-15);
  EXPECT_NEAR(*b_crit(1.0), -0.61700, 1e-5);
  EXPECT_FALSE(b_crit(kGapThreshold).has_value());
  EXPECT_FALSE(b_crit(0.2).has_value());
  double prev = -kPi / 2;
  for (double a : {0.4, 1.0, 4.0, 40.0, 4000.0}) {
    const double b = *b_crit(a);
    EXPECT_GT(b, prev);
    EXPECT_LT(b, 0.0);
    EXPECT_NEAR(gap_derivatives(a, b).d1, 0.0, 1e-12);
    prev = b;
  }
  EXPECT_GT(*b_crit(4000.0), -1e-3);
}

TEST(GapScan, RegimeStructure) {
  const auto interior = gap_scan(RobinParam(1.0));
  const double step = kPi / 2000;
  EXPECT_EQ(interior.b_values.size(), kDefaultGapGrid);
  EXPECT_LE(interior.max_discrepancy(), 1e-8);
  EXPECT_NEAR(interior.argmax_numeric, *interior.b_crit_formula, step);

  const auto boundary = gap_scan(RobinParam(0.2), 201);
  EXPECT_EQ(boundary.argmax_numeric, -kPi / 2);
  EXPECT_FALSE(boundary.b_crit_formula.has_value());
  EXPECT_THROW(gap_scan(RobinParam(1.0), 1), ParameterError);
}

TEST(ExtremalSearch, Examples) {
  const auto small = extremal_search(RobinParam(0.1), 8);
  EXPECT_TRUE(small.exhaustive);
  EXPECT_EQ(small.evaluated, 70u);
  EXPECT_GE(small.best_gap, gap_formula(0.1, -kPi / 2) - 1e-9);

  const auto full = extremal_search(RobinParam(0.1), 8, 2 * kPi);
  EXPECT_EQ(full.cells.size(), 8u);
  EXPECT_NEAR(full.best_gap, kPi * kPi / 2, 1e-10);  // f = 1: u = (pi^2 - x^2)/2 + pi/alpha

  const auto intervals = best_interval_candidate(RobinParam(1.0), 16);
  const double h = 2 * kPi / 16;
  const double center = -kPi + h * static_cast<double>(intervals.cells.front()) + kPi / 2;
  EXPECT_NEAR(intervals.best_gap, gap_formula(1.0, center), 1e-10);
  for (std::size_t s = 0; s + 8 <= 16; ++s) {
    EXPECT_LE(gap_formula(1.0, -kPi / 2 + h * static_cast<double>(s)), intervals.best_gap + 1e-10);
  }

  EXPECT_THROW(extremal_search(RobinParam(1.0), 8, 1.0), ParameterError);
  EXPECT_THROW(extremal_search(RobinParam(1.0), 9), ParameterError);
  EXPECT_THROW(extremal_search(RobinParam(1.0), 6), ParameterError);
}

TEST(ExtremalSearch, ExhaustiveMatchesBruteForceOracle) {
  const RobinParam alpha(0.7);
  const std::size_t n = 12;
  double best = -1;
  std::vector<std::size_t> best_cells;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != 6) continue;
    std::vector<std::size_t> cells;
    for (std::size_t j = 0; j < n; ++j) if (mask >> j & 1u) cells.push_back(j);
    const double g = extrema(robin_solve(StepFunction::uniform(kRod, [&] {
      std::vector<double> v(n, 0.0);
      for (auto c : cells) v[c] = 1.0;
      return v;
    }()), alpha)).osc();
    if (g > best + 1e-12 * best || (std::abs(g - best) <= 1e-12 * best && cells < best_cells)) {
      best = g;
      best_cells = cells;
    }
  }
  const auto r = extremal_search(alpha, n);
  EXPECT_NEAR(r.best_gap, best, 1e-12);
  EXPECT_EQ(r.cells, best_cells);
  EXPECT_NEAR(cell_set_gap(alpha, n, r.cells), r.best_gap, 0.0);
}

TEST(ExtremalSearch, NeverBelowBestInterval) {
  for (double a : {0.1, 0.5, 2.0}) {
    for (std::size_t n : {8u, 12u, 16u, 28u}) {
      const auto r = extremal_search(RobinParam(a), n);
      EXPECT_EQ(r.exhaustive, n <= kExhaustiveCellLimit);
      EXPECT_GE(r.best_gap, best_interval_candidate(RobinParam(a), n).best_gap - 1e-12);
    }
  }
}

TEST(ExtremalSearch, DeterministicAcrossThreadCounts) {
  setenv("RODSYM_THREADS", "1", 1);
  const auto a = extremal_search(RobinParam(0.3), 16);
  const auto c = extremal_search(RobinParam(0.3), 30, kPi, 5);
  setenv("RODSYM_THREADS", "3", 1);
  const auto b = extremal_search(RobinParam(0.3), 16);
  const auto d = extremal_search(RobinParam(0.3), 30, kPi, 5);
  unsetenv("RODSYM_THREADS");
  EXPECT_EQ(a.cells, b.cells);
  EXPECT_EQ(a.best_gap, b.best_gap);
  EXPECT_EQ(c.cells, d.cells);
  EXPECT_EQ(c.best_gap, d.best_gap);
}
