#include "rodsym/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rodsym/errors.hpp"
#include "rodsym/rearrange.hpp"

namespace rodsym {

namespace {

double wrap(double x, const Interval& period) {
  const double L = period.length();
  double r = x - L * std::floor((x - period.lo()) / L);
  if (r >= period.hi()) r -= L;
  if (r < period.lo()) r = period.lo();
  return r;
}

struct DoubleIntegral {
  double value;
  double error_bound;
};

// n_grid-cell midpoint rule in x of f(x) * (g * h)(x).
//
// On a cell C of width dx, f = f(m) + df with |df| <= TV_C(f), and G = g * h
// is piecewise linear with slope jumps of total size TV_C(G'). Hence the cell
// error is at most dx ||G|| TV_C(f) + ||f|| TV_C(G') dx^2 / 4. A jump on a
// cell boundary may be charged to two cells, giving the factor 2 below.
// TV(G') <= TV(g) TV(h) with both extended by zero.
DoubleIntegral midpoint_double_integral(const StepFunction& f, const StepFunction& g,
                                        const StepFunction& h, std::size_t n_grid,
                                        bool periodic) {
  const double dx = f.domain().length() / static_cast<double>(n_grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double x = f.domain().lo() + dx * (static_cast<double>(i) + 0.5);
    const double fx = f(x);
    if (fx != 0.0) sum += fx * step_convolution(g, h, x, periodic);
  }
  const double g_sup = std::min(g.l1_norm() * h.sup_norm(), g.sup_norm() * h.l1_norm());
  const double bound =
      2.0 * dx * g_sup * total_variation(f, false) +
      0.5 * dx * dx * f.sup_norm() * total_variation(g, true) * total_variation(h, true);
  return {sum * dx, bound};
}

void require_nonnegative(const StepFunction& f, const char* name) {
  if (f.min_value() < 0.0) {
    throw PreconditionError(std::string("riesz_sobolev_check: ") + name +
                            " must be nonnegative");
  }
}

void require_grid(std::size_t n_grid) {
  if (n_grid == 0) throw ParameterError("outer grid must have at least one cell");
}

}  // namespace

double step_convolution(const StepFunction& g, const StepFunction& h, double x,
                        bool periodic) {
  const Interval& gd = g.domain();
  std::vector<double> cuts;
  cuts.reserve(g.breakpoints().size() + h.breakpoints().size() + 2);
  for (double c : h.breakpoints()) {
    const double y = periodic ? wrap(x - c, gd) : x - c;
    if (y > gd.lo() && y < gd.hi()) cuts.push_back(y);
  }
  cuts.insert(cuts.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double y0 = cuts[i];
    const double y1 = cuts[i + 1];
    if (!(y1 > y0)) continue;
    const double mid = 0.5 * (y0 + y1);
    double z = x - mid;
    if (periodic) {
      z = wrap(z, h.domain());
    } else if (z < h.domain().lo() || z > h.domain().hi()) {
      continue;
    }
    total += g(mid) * h(z) * (y1 - y0);
  }
  return total;
}

InequalityResult hardy_littlewood_check(const StepFunction& f, const StepFunction& g) {
  if (!f.domain().same_as(g.domain())) {
    throw ParameterError("hardy_littlewood_check: domain mismatch");
  }
  return {integrate_product(f, g),
          integrate_product(symmetric_decreasing_rearrangement(f),
                            symmetric_decreasing_rearrangement(g)),
          kHardyLittlewoodSlack};
}

InequalityResult riesz_sobolev_check(const StepFunction& f, const StepFunction& g,
                                     const StepFunction& h, std::size_t n_grid) {
  require_grid(n_grid);
  require_nonnegative(f, "f");
  require_nonnegative(g, "g");
  require_nonnegative(h, "h");
  const auto lhs = midpoint_double_integral(f, g, h, n_grid, false);
  const auto rhs = midpoint_double_integral(symmetric_decreasing_rearrangement(f),
                                            symmetric_decreasing_rearrangement(g),
                                            symmetric_decreasing_rearrangement(h),
                                            n_grid, false);
  return {lhs.value, rhs.value, lhs.error_bound + rhs.error_bound};
}

InequalityResult baernstein_check(const StepFunction& f, const StepFunction& g,
                                  const StepFunction& h, std::size_t n_grid) {
  require_grid(n_grid);
  if (!f.domain().same_as(g.domain()) || !f.domain().same_as(h.domain())) {
    throw ParameterError("baernstein_check: f, g and h must share one period");
  }
  const auto lhs = midpoint_double_integral(f, g, h, n_grid, true);
  const auto rhs = midpoint_double_integral(symmetric_decreasing_rearrangement(f),
                                            symmetric_decreasing_rearrangement(g),
                                            symmetric_decreasing_rearrangement(h),
                                            n_grid, true);
  return {lhs.value, rhs.value, lhs.error_bound + rhs.error_bound};
}

}  // namespace rodsym
