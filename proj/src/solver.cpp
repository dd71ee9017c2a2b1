#include "rodsym/solver.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rodsym/errors.hpp"

namespace rodsym {

namespace {

void require_rod(const StepFunction& f, const char* who) {
  if (!f.domain().same_as(rod_domain())) {
    throw DomainError(std::string(who) + ": source must live on [-pi, pi]");
  }
}

void require_in_rod(double x) {
  const double slack = kBreakpointMergeTol * kPi;
  if (!(x >= -kPi - slack && x <= kPi + slack)) {
    throw DomainError(fmt::format("Green's function argument {} outside [-pi, pi]", x));
  }
}

void require_compatible(const StepFunction& f, const char* who) {
  const double total = f.integral();
  if (std::abs(total) > kCompatibilityTol) {
    throw CompatibilityError(fmt::format(
        "{}: Neumann data must satisfy \\int f = 0 (got {:.3e})", who, total));
  }
}

void audit(const PiecewisePoly& u, const StepFunction& f, const BoundaryCondition& bc) {
  const double budget = kResidualTol * (1.0 + f.l1_norm());
  const auto r = boundary_residuals(u, bc);
  if (r.left > budget || r.right > budget || r.mean > budget) {
    throw InternalError(fmt::format(
        "{} solve failed its residual audit: left {:.3e}, right {:.3e}, mean {:.3e}",
        bc.label(), r.left, r.right, r.mean));
  }
}

// u(x) = \int G(x, y) f(y) dy with G = -c xy/2 - |x - y|/2 + 1/(2c), expanded
// through the cumulative moments M0, M1 of f.
PiecewisePoly green_solve(const StepFunction& f, double c) {
  const auto moments = cumulative_moments(f);
  const double t0 = moment(f, 0);
  const double t1 = moment(f, 1);
  std::vector<Quadratic> coeffs;
  coeffs.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Quadratic& m0 = moments.m0.piece(i);
    const Quadratic& m1 = moments.m1.piece(i);
    coeffs.push_back({m1.c0 - 0.5 * t1 + t0 / (2.0 * c),
                      -m0.c0 + 0.5 * t0 - 0.5 * c * t1,
                      -(m0.c1 - m1.c2)});
  }
  return PiecewisePoly(f.domain(), {f.breakpoints().begin(), f.breakpoints().end()},
                       std::move(coeffs), true);
}

// Composite Simpson on [a, b] with an even number of intervals.
template <class Fn>
double simpson(Fn&& fn, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = fn(a) + fn(b);
  for (int i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * fn(a + h * i);
  }
  return sum * h / 3.0;
}

}  // namespace

RobinParam::RobinParam(double alpha) : alpha_(alpha), c_alpha_(alpha / (1.0 + alpha * kPi)) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw ParameterError("Robin parameter must be positive and finite");
  }
}

std::string BoundaryCondition::label() const {
  switch (kind) {
    case Kind::Robin: return fmt::format("robin:{}", alpha);
    case Kind::Neumann: return "neumann";
    case Kind::Dirichlet: return "dirichlet";
  }
  return "unknown";
}

double robin_green(double x, double y, const RobinParam& alpha) {
  require_in_rod(x);
  require_in_rod(y);
  const double c = alpha.c_alpha();
  return -0.5 * c * (x * y) - 0.5 * std::abs(x - y) + 0.5 / c;
}

double dirichlet_green(double x, double y) {
  require_in_rod(x);
  require_in_rod(y);
  return -(x * y) / (2.0 * kPi) - 0.5 * std::abs(x - y) + 0.5 * kPi;
}

PiecewisePoly robin_solve(const StepFunction& f, const RobinParam& alpha) {
  require_rod(f, "robin_solve");
  auto u = green_solve(f, alpha.c_alpha());
  audit(u, f, BoundaryCondition::robin(alpha));
  return u;
}

PiecewisePoly dirichlet_solve(const StepFunction& f) {
  require_rod(f, "dirichlet_solve");
  auto u = green_solve(f, 1.0 / kPi);
  audit(u, f, BoundaryCondition::dirichlet());
  return u;
}

double neumann_kernel(double x) {
  const double period = 2.0 * kPi;
  double r = std::remainder(x, period);  // in [-pi, pi]
  return 0.5 * r * r - kPi * std::abs(r) + kPi * kPi / 3.0;
}

PiecewisePoly neumann_solve(const StepFunction& f) {
  require_compatible(f, "neumann_solve");
  // u(x) = -\int_lo^x (x - y) f(y) dy + C = M1(x) - x M0(x) + C.
  const auto moments = cumulative_moments(f);
  std::vector<Quadratic> coeffs;
  coeffs.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Quadratic& m0 = moments.m0.piece(i);
    const Quadratic& m1 = moments.m1.piece(i);
    coeffs.push_back({m1.c0, -m0.c0, m1.c2 - m0.c1});
  }
  PiecewisePoly raw(f.domain(), {f.breakpoints().begin(), f.breakpoints().end()},
                    std::move(coeffs), true);
  auto u = raw.plus_constant(-integrate(raw) / f.domain().length());
  audit(u, f, BoundaryCondition::neumann());
  return u;
}

PiecewisePoly neumann_convolution_solve(const StepFunction& f) {
  require_rod(f, "neumann_convolution_solve");
  require_compatible(f, "neumann_convolution_solve");
  // For x, y in [-pi, pi] the periodic kernel is K(z) = z^2/2 - pi|z| + pi^2/3
  // on all of z = x - y in [-2pi, 2pi], so no wrap split is needed.
  const auto moments = cumulative_moments(f);
  const double t0 = moment(f, 0);
  const double t1 = moment(f, 1);
  const double t2 = moment(f, 2);
  const double scale = 1.0 / (2.0 * kPi);
  std::vector<Quadratic> coeffs;
  coeffs.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Quadratic& m0 = moments.m0.piece(i);
    const Quadratic& m1 = moments.m1.piece(i);
    // \int |x - y| f = (t1 - 2 m1.c0) + (2 m0.c0 - t0) x + (2 m0.c1 - 2 m1.c2) x^2
    const double abs0 = t1 - 2.0 * m1.c0;
    const double abs1 = 2.0 * m0.c0 - t0;
    const double abs2 = 2.0 * (m0.c1 - m1.c2);
    coeffs.push_back({scale * (0.5 * t2 + kPi * kPi * t0 / 3.0 - kPi * abs0),
                      scale * (-t1 - kPi * abs1),
                      scale * (0.5 * t0 - kPi * abs2)});
  }
  return PiecewisePoly(f.domain(), {f.breakpoints().begin(), f.breakpoints().end()},
                       std::move(coeffs), true);
}

PiecewisePoly direct_integration_oracle(const StepFunction& f, const BoundaryCondition& bc) {
  // U(x) = -\int_lo^x \int_lo^t f(s) ds dt
  const PiecewisePoly first = PiecewisePoly::from_step(f).antiderivative();
  const PiecewisePoly base = first.antiderivative().scaled(-1.0);
  const double lo = f.domain().lo();
  const double hi = f.domain().hi();
  const double u_lo = base(lo);
  const double u_hi = base(hi);
  const double du_lo = base.derivative(lo);
  const double du_hi = base.derivative(hi);

  double slope = 0.0;
  double offset = 0.0;
  switch (bc.kind) {
    case BoundaryCondition::Kind::Robin: {
      const double a = RobinParam(bc.alpha).alpha();
      // [a lo - 1, a; 1 + a hi, a] (c, d) = (U'(lo) - a U(lo), -U'(hi) - a U(hi))
      const double m00 = a * lo - 1.0, m01 = a;
      const double m10 = 1.0 + a * hi, m11 = a;
      const double r0 = du_lo - a * u_lo;
      const double r1 = -du_hi - a * u_hi;
      const double det = m00 * m11 - m01 * m10;
      if (std::abs(det) < 1e-300) throw InternalError("singular Robin system");
      slope = (r0 * m11 - m01 * r1) / det;
      offset = (m00 * r1 - m10 * r0) / det;
      break;
    }
    case BoundaryCondition::Kind::Dirichlet: {
      slope = -(u_hi - u_lo) / (hi - lo);
      offset = -u_lo - slope * lo;
      break;
    }
    case BoundaryCondition::Kind::Neumann: {
      require_compatible(f, "direct_integration_oracle");
      slope = -du_lo;
      const double linear_mean = slope * 0.5 * (lo + hi);
      offset = -(integrate(base) / (hi - lo) + linear_mean);
      break;
    }
  }
  const PiecewisePoly line(f.domain(), {lo, hi}, {Quadratic{offset, slope, 0.0}}, true);
  return base + line;
}

PiecewisePoly solve(const StepFunction& f, const BoundaryCondition& bc) {
  switch (bc.kind) {
    case BoundaryCondition::Kind::Robin: return robin_solve(f, RobinParam(bc.alpha));
    case BoundaryCondition::Kind::Neumann: return neumann_solve(f);
    case BoundaryCondition::Kind::Dirichlet: return dirichlet_solve(f);
  }
  throw InternalError("unknown boundary condition");
}

BoundaryResiduals boundary_residuals(const PiecewisePoly& u, const BoundaryCondition& bc) {
  const double lo = u.domain().lo();
  const double hi = u.domain().hi();
  BoundaryResiduals r;
  switch (bc.kind) {
    case BoundaryCondition::Kind::Robin:
      r.left = std::abs(-u.derivative(lo) + bc.alpha * u(lo));
      r.right = std::abs(u.derivative(hi) + bc.alpha * u(hi));
      break;
    case BoundaryCondition::Kind::Dirichlet:
      r.left = std::abs(u(lo));
      r.right = std::abs(u(hi));
      break;
    case BoundaryCondition::Kind::Neumann:
      r.left = std::abs(u.derivative(lo));
      r.right = std::abs(u.derivative(hi));
      r.mean = std::abs(integrate(u));
      break;
  }
  return r;
}

double kernel_fourier_check(int n) {
  if (std::abs(n) > 64) throw ParameterError("kernel_fourier_check supports |n| <= 64");
  auto integrand = [n](double x) {
    return neumann_kernel(x) * std::cos(static_cast<double>(n) * x);
  };
  constexpr int kHalfIntervals = 4096;
  const double total = simpson(integrand, -kPi, 0.0, kHalfIntervals) +
                       simpson(integrand, 0.0, kPi, kHalfIntervals);
  return total / (2.0 * kPi);
}

}  // namespace rodsym
