#pragma once

// Exact piecewise-constant and piecewise-quadratic functions on a closed
// interval. Every source term in the library is a StepFunction; every
// solution, kernel slice and cumulative moment is a PiecewisePoly of
// degree <= 2, so integrals, extrema and norms are computed in closed form.

#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace rodsym {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Breakpoints closer than this are fused.
inline constexpr double kBreakpointMergeTol = 1e-12;
// Continuity tolerance for polynomials flagged `continuous`.
inline constexpr double kContinuityTol = 1e-10;

class Interval {
 public:
  Interval(double lo, double hi);

  // [-length/2, length/2]
  static Interval centered(double length);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  // Equality up to kBreakpointMergeTol on both ends.
  bool same_as(const Interval& other) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

// Interval [-pi, pi] on which the Robin and Dirichlet problems live.
Interval rod_domain();

class StepFunction {
 public:
  // breakpoints b0 = lo < b1 < ... < bk = hi; values[i] lives on (b_i, b_{i+1}).
  StepFunction(Interval domain, std::vector<double> breakpoints,
               std::vector<double> values);

  static StepFunction constant(Interval domain, double value);
  // height * indicator of [a, b] intersected with the domain.
  static StepFunction indicator(Interval domain, double a, double b,
                                double height = 1.0);
  // Equal-width pieces carrying `values` left to right.
  static StepFunction uniform(Interval domain, std::vector<double> values);

  const Interval& domain() const noexcept { return domain_; }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double piece_lo(std::size_t i) const { return breakpoints_[i]; }
  double piece_hi(std::size_t i) const { return breakpoints_[i + 1]; }
  double piece_length(std::size_t i) const {
    return breakpoints_[i + 1] - breakpoints_[i];
  }

  // Index of the piece containing x (right piece at a breakpoint, last piece at hi).
  std::size_t piece_index(double x) const;
  double operator()(double x) const;

  double integral() const noexcept;
  double max_value() const noexcept;
  double min_value() const noexcept;
  double sup_norm() const noexcept;
  double l1_norm() const noexcept;

  StepFunction translated_to(double new_lo) const;
  StepFunction scaled(double factor) const;

 private:
  Interval domain_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

struct Quadratic {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double x) const noexcept { return c0 + x * (c1 + x * c2); }
  double derivative(double x) const noexcept { return c1 + 2.0 * c2 * x; }

  friend Quadratic operator+(const Quadratic& a, const Quadratic& b) noexcept {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend Quadratic operator-(const Quadratic& a, const Quadratic& b) noexcept {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend Quadratic operator*(double s, const Quadratic& a) noexcept {
    return {s * a.c0, s * a.c1, s * a.c2};
  }
  friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

class PiecewisePoly {
 public:
  // coeffs[i] is expressed in the global variable x on (b_i, b_{i+1}).
  // When `continuous` is set, the constructor rejects jumps above kContinuityTol
  // (relative to the local magnitude).
  PiecewisePoly(Interval domain, std::vector<double> breakpoints,
                std::vector<Quadratic> coeffs, bool continuous = false);

  static PiecewisePoly zero(Interval domain);
  static PiecewisePoly constant(Interval domain, double value);
  static PiecewisePoly from_step(const StepFunction& f);

  const Interval& domain() const noexcept { return domain_; }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const Quadratic> pieces() const noexcept { return coeffs_; }
  const Quadratic& piece(std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool continuous() const noexcept { return continuous_; }

  double piece_lo(std::size_t i) const { return breakpoints_[i]; }
  double piece_hi(std::size_t i) const { return breakpoints_[i + 1]; }

  std::size_t piece_index(double x) const;
  double operator()(double x) const;
  double derivative(double x) const;

  // Largest jump across interior breakpoints.
  double max_jump() const noexcept;
  bool is_continuous(double tol = kContinuityTol) const noexcept;

  // x -> value_at_lo + \int_lo^x p. Requires every piece to be at most linear.
  PiecewisePoly antiderivative(double value_at_lo = 0.0) const;

  PiecewisePoly plus_constant(double c) const;
  PiecewisePoly scaled(double factor) const;

  friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
  friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b);

 private:
  Interval domain_;
  std::vector<double> breakpoints_;
  std::vector<Quadratic> coeffs_;
  bool continuous_;
};

// \int_a^b; [a, b] must lie inside the domain.
double integrate(const StepFunction& f, double a, double b);
double integrate(const PiecewisePoly& p, double a, double b);
double integrate(const PiecewisePoly& p);

// \int y^k f(y) dy over the whole domain, k in {0, 1, 2}.
double moment(const StepFunction& f, int k);

// \int f g for two step functions on the same domain.
double integrate_product(const StepFunction& f, const StepFunction& g);

// Sum of jumps between adjacent pieces. With `with_boundary`, the jumps from
// zero at both ends (extension by zero) are included.
double total_variation(const StepFunction& f, bool with_boundary);

struct CumulativeMoments {
  PiecewisePoly m0;  // x -> \int_lo^x f
  PiecewisePoly m1;  // x -> \int_lo^x y f(y) dy
};

CumulativeMoments cumulative_moments(const StepFunction& f);

struct Extrema {
  double min = 0.0;
  double argmin = 0.0;
  double max = 0.0;
  double argmax = 0.0;

  double osc() const noexcept { return max - min; }
};

// Global extrema over the closed domain; ties go to the smallest argument.
Extrema extrema(const PiecewisePoly& p);

// p in [1, inf]; pass kInfinity for the sup norm.
double lp_norm(const PiecewisePoly& p, double pexp);

// \int (p - level)_+ over the domain.
double hinge_integral(const PiecewisePoly& p, double level);

// \int p^2 over the domain.
double integrate_square(const PiecewisePoly& p);

// max |a - b| over the common domain.
double sup_distance(const PiecewisePoly& a, const PiecewisePoly& b);

// n uniformly spaced points lo, ..., hi (n >= 2), endpoints exact.
std::vector<double> uniform_grid(const Interval& domain, std::size_t n);

}  // namespace rodsym
