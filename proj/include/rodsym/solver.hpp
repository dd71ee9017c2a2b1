#pragma once

// Closed-form solvers for -u'' = f with step-function data.
//
//   Robin      on [-pi, pi]:  -u'(-pi) + a u(-pi) = u'(pi) + a u(pi) = 0
//   Dirichlet  on [-pi, pi]:  u(-pi) = u(pi) = 0
//   Neumann    on [lo, hi]:   u'(lo) = u'(hi) = 0, \int u = 0, needs \int f = 0
//
// Every solve audits its own boundary residuals and throws InternalError if
// they exceed kResidualTol * (1 + ||f||_1).

#include <string>

#include "rodsym/piecewise.hpp"

namespace rodsym {

inline constexpr double kResidualTol = 1e-10;
inline constexpr double kCompatibilityTol = 1e-10;

class RobinParam {
 public:
  // alpha > 0 and finite.
  explicit RobinParam(double alpha);

  double alpha() const noexcept { return alpha_; }
  // alpha / (1 + alpha pi), in (0, 1/pi).
  double c_alpha() const noexcept { return c_alpha_; }

 private:
  double alpha_;
  double c_alpha_;
};

struct BoundaryCondition {
  enum class Kind { Robin, Neumann, Dirichlet };

  Kind kind = Kind::Dirichlet;
  double alpha = 0.0;  // Robin only

  static BoundaryCondition robin(RobinParam p) { return {Kind::Robin, p.alpha()}; }
  static BoundaryCondition neumann() { return {Kind::Neumann, 0.0}; }
  static BoundaryCondition dirichlet() { return {Kind::Dirichlet, 0.0}; }

  std::string label() const;
};

// G(x, y) = -c xy / 2 - |x - y| / 2 + 1 / (2c), c = c_alpha.
double robin_green(double x, double y, const RobinParam& alpha);
// Limit alpha -> infinity: c = 1 / pi.
double dirichlet_green(double x, double y);

PiecewisePoly robin_solve(const StepFunction& f, const RobinParam& alpha);
PiecewisePoly dirichlet_solve(const StepFunction& f);

// K(x) = x^2/2 - pi|x| + pi^2/3 with x reduced modulo 2 pi into [-pi, pi].
double neumann_kernel(double x);

// Zero-mean solution on f's domain, built from u' = -\int_lo^x f.
PiecewisePoly neumann_solve(const StepFunction& f);

// u = (1/2pi) \int K(x - y) f(y) dy on [-pi, pi], K periodic.
// u'(+-pi) = -(1/2pi) \int y f(y) dy, which vanishes only for balanced data.
PiecewisePoly neumann_convolution_solve(const StepFunction& f);

// Double antiderivative plus c x + d, with (c, d) fixed by the boundary
// condition (or zero mean for Neumann). Works on any interval and shares no
// code with the Green's-function paths.
PiecewisePoly direct_integration_oracle(const StepFunction& f, const BoundaryCondition& bc);

// Dispatches to robin_solve / dirichlet_solve / neumann_solve.
PiecewisePoly solve(const StepFunction& f, const BoundaryCondition& bc);

struct BoundaryResiduals {
  double left = 0.0;
  double right = 0.0;
  double mean = 0.0;  // |\int u|, Neumann only
};

BoundaryResiduals boundary_residuals(const PiecewisePoly& u, const BoundaryCondition& bc);

// Real part of (1/2pi) \int K(x) e^{-inx} dx by composite Simpson with 8192
// intervals split at the kink x = 0. |n| <= 64.
double kernel_fourier_check(int n);

}  // namespace rodsym
