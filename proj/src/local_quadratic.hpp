#pragma once

// Quadratic re-expanded about the left end of its piece, p(a + s) for
// s in [0, length]. Root finding and integration in the local variable avoid
// the cancellation that global coefficients suffer away from the origin.

#include <array>
#include <cmath>
#include <cstddef>

#include "rodsym/piecewise.hpp"

namespace rodsym {

struct Crossings {
  std::array<double, 2> at{};
  std::size_t count = 0;

  std::size_t size() const noexcept { return count; }
  double operator[](std::size_t i) const noexcept { return at[i]; }
};

struct LocalQuadratic {
  double origin = 0.0;
  double length = 0.0;
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;

  static LocalQuadratic of(const Quadratic& q, double a, double b) noexcept {
    return {a, b - a, q(a), q.derivative(a), q.c2};
  }

  double operator()(double s) const noexcept { return q0 + s * (q1 + s * q2); }

  // \int_{s0}^{s1}
  double integral(double s0, double s1) const noexcept {
    const double d = s1 - s0;
    return d * (q0 + q1 * (s0 + s1) / 2.0 + q2 * (s0 * s0 + s0 * s1 + s1 * s1) / 3.0);
  }

  double integral_of_square() const noexcept {
    const double L = length;
    const double a0 = q0 * q0;
    const double a1 = 2.0 * q0 * q1;
    const double a2 = q1 * q1 + 2.0 * q0 * q2;
    const double a3 = 2.0 * q1 * q2;
    const double a4 = q2 * q2;
    return L * (a0 + L * (a1 / 2.0 + L * (a2 / 3.0 + L * (a3 / 4.0 + L * a4 / 5.0))));
  }

  // Sorted solutions of p(s) = level strictly inside (0, length).
  Crossings crossings(double level) const noexcept {
    Crossings out;
    auto keep = [&](double s) {
      if (s > 0.0 && s < length) out.at[out.count++] = s;
    };
    const double c = q0 - level;
    if (q2 == 0.0) {
      if (q1 != 0.0) keep(-c / q1);
      return out;
    }
    const double disc = q1 * q1 - 4.0 * q2 * c;
    if (disc < 0.0) return out;
    const double t = -0.5 * (q1 + std::copysign(std::sqrt(disc), q1));
    if (t == 0.0) {
      keep(0.0);
      return out;
    }
    double r1 = t / q2;
    double r2 = c / t;
    if (r1 > r2) std::swap(r1, r2);
    keep(r1);
    if (r2 != r1) keep(r2);
    return out;
  }
};

inline double integrate_quadratic(const Quadratic& q, double a, double b) noexcept {
  return LocalQuadratic::of(q, a, b).integral(0.0, b - a);
}

}  // namespace rodsym
