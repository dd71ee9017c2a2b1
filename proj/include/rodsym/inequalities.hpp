#pragma once

// Numerical checks of the three rearrangement inequalities
//   Hardy-Littlewood  \int f g            <= \int f# g#
//   Riesz-Sobolev     \iint f(x) g(y) h(x-y)   <= same with f#, g#, h#   (on R)
//   Baernstein        same, with h evaluated 2L-periodically on one period
// on step-function data.

#include <cstddef>

#include "rodsym/piecewise.hpp"

namespace rodsym {

struct InequalityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  // One-sided allowance for quadrature error; the check is lhs <= rhs + slack.
  double slack = 0.0;

  double margin() const noexcept { return rhs - lhs; }
  bool pass() const noexcept { return margin() >= -slack; }
};

inline constexpr double kHardyLittlewoodSlack = 1e-10;
inline constexpr std::size_t kDefaultOuterGrid = 4096;

// Both sides exact. f and g must share a domain.
InequalityResult hardy_littlewood_check(const StepFunction& f, const StepFunction& g);

// f, g, h >= 0, each extended by zero outside its own domain. The inner y
// integral is exact; the outer x integral is an n_grid-cell midpoint rule
// over f's domain. `slack` is a rigorous bound on the midpoint error of both
// sides, proportional to 1/n_grid.
InequalityResult riesz_sobolev_check(const StepFunction& f, const StepFunction& g,
                                     const StepFunction& h,
                                     std::size_t n_grid = kDefaultOuterGrid);

// f, g, h share one domain, read as a period; h(x - y) wraps into it.
InequalityResult baernstein_check(const StepFunction& f, const StepFunction& g,
                                  const StepFunction& h,
                                  std::size_t n_grid = kDefaultOuterGrid);

// \int g(y) h(x - y) dy with h extended by zero (periodic = false) or
// periodically over its domain (periodic = true; g and h share the domain).
double step_convolution(const StepFunction& g, const StepFunction& h, double x,
                        bool periodic);

}  // namespace rodsym
