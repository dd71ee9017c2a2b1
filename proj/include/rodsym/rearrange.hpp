#pragma once

// Decreasing and symmetric decreasing rearrangements, star functions, and
// majorization (convex means) checks.
//
// For f on X with |X| = L:
//   f*(t)  decreasing rearrangement on [0, L]
//   f#(t)  = f*(2|t|) on [-L/2, L/2]
//   f★(t)  = \int_0^t f*(s) ds  = sup_{|E| = t} \int_E f

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rodsym/piecewise.hpp"

namespace rodsym {

// Piecewise-linear curve on [0, length] with values[0] = 0.
class StarCurve {
 public:
  StarCurve(double length, std::vector<double> nodes, std::vector<double> values);

  double length() const noexcept { return length_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> values() const noexcept { return values_; }
  double total() const noexcept { return values_.back(); }

  // Linear interpolation; t must lie in [0, length].
  double operator()(double t) const;

  // Successive slopes non-increasing within tol.
  bool is_concave(double tol = 1e-12) const noexcept;

 private:
  double length_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

// |{x : f(x) > level}|
double measure_above(const StepFunction& f, double level);

// Pieces sorted by value, descending (stable on ties), laid out on [0, |X|].
StepFunction decreasing_rearrangement(const StepFunction& f);
// f#(t) = f*(2|t|) on [-|X|/2, |X|/2].
StepFunction symmetric_decreasing_rearrangement(const StepFunction& f);

// Exact star function; nodes at the breakpoints of f*.
StarCurve star_function(const StepFunction& f);

// Independent estimate of f★(t): the best union of n_grid equal cells,
// using cell averages, with a fractional last cell.
// |estimate - f★(t)| <= 2 ||f||_inf |X| / n_grid.
double star_function_bruteforce(const StepFunction& f, double t, std::size_t n_grid);

// Minimum of b(t) - a(t) over the union of both node sets.
double star_margin(const StarCurve& a, const StarCurve& b);
// a <= b + tol at every node of either curve.
bool star_dominates(const StarCurve& a, const StarCurve& b, double tol);

// Super-level-set structure of a piecewise quadratic: distribution function,
// decreasing rearrangement and star function evaluated exactly (up to
// root-finding in floating point).
class LevelSetProfile {
 public:
  explicit LevelSetProfile(const PiecewisePoly& p);

  double length() const noexcept { return length_; }
  double max_value() const noexcept { return critical_.front(); }
  double min_value() const noexcept { return critical_.back(); }

  // |{p > level}|
  double measure_above(double level) const noexcept;
  // \int (p - level)_+
  double excess(double level) const noexcept;
  // p*(t), t in [0, length]
  double decreasing_value(double t) const;
  // p#(x) = p*(2|x|), x in [-length/2, length/2]
  double symmetric_value(double x) const;
  // p★(t) = min_s [excess(s) + s t], attained at s = p*(t)
  double star(double t) const;

 private:
  struct Segment {
    double length;
    double q0, q1, q2;  // p(start + s) = q0 + q1 s + q2 s^2
    double low, high;   // value range over the segment
    int direction;      // +1 increasing, -1 decreasing, 0 constant
  };

  static double measure_above(const Segment& s, double level) noexcept;
  static double excess(const Segment& s, double level) noexcept;

  double length_;
  std::vector<Segment> segments_;
  std::vector<double> critical_;       // distinct segment end values, descending
  std::vector<double> critical_mass_;  // measure_above(critical_[k])
};

enum class StarMethod {
  // Exact star function at uniformly spaced nodes.
  Exact,
  // Sort point samples at cell midpoints and prefix-sum; error O(osc |X| / N).
  Sampled,
};

inline constexpr std::size_t kExactStarNodes = 1024;
inline constexpr std::size_t kSampledStarPoints = 100000;

// `resolution` is the number of node intervals (Exact) or samples (Sampled);
// 0 selects the default for the method.
StarCurve star_function(const PiecewisePoly& p, StarMethod method = StarMethod::Exact,
                        std::size_t resolution = 0);

enum class ConvexFamily {
  IncreasingConvex,
  Convex,
};

struct ConvexMeansResult {
  double min_margin = 0.0;  // min over test functions of \int phi(v) - \int phi(u)
  std::string worst;        // label of the test function attaining min_margin
  std::size_t tests = 0;
  bool pass = false;
};

inline constexpr std::size_t kHingeThresholds = 64;

// \int phi(u) <= \int phi(v) + tol for phi(s) = s, the hinges
// phi_c(s) = max(s - c, 0) at 64 thresholds spanning the joint range, and,
// for the convex family, phi(s) = s^2. The convex family requires equal means
// (within tol) and throws PreconditionError otherwise.
ConvexMeansResult convex_means_check(const PiecewisePoly& u, const PiecewisePoly& v,
                                     ConvexFamily family, double tol);

}  // namespace rodsym
