#include "rodsym/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "rodsym/errors.hpp"
#include "local_quadratic.hpp"

namespace rodsym {

namespace {

double length_slack(double length) {
  return kBreakpointMergeTol * std::max(1.0, length);
}

}  // namespace

// ---------------------------------------------------------------------------
// StarCurve

StarCurve::StarCurve(double length, std::vector<double> nodes, std::vector<double> values)
    : length_(length), nodes_(std::move(nodes)), values_(std::move(values)) {
  if (!(length > 0.0)) throw ParameterError("star curve needs positive length");
  if (nodes_.size() < 2 || nodes_.size() != values_.size()) {
    throw ParameterError("star curve needs matching nodes and values");
  }
  if (nodes_.front() != 0.0 || std::abs(nodes_.back() - length) > length_slack(length)) {
    throw ParameterError("star curve nodes must span [0, length]");
  }
  nodes_.back() = length;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!(nodes_[i + 1] > nodes_[i])) {
      throw ParameterError("star curve nodes must be strictly increasing");
    }
  }
  if (values_.front() != 0.0) throw ParameterError("star curve must start at 0");
}

double StarCurve::operator()(double t) const {
  if (t < -length_slack(length_) || t > length_ + length_slack(length_)) {
    throw ParameterError("star curve evaluated outside [0, length]");
  }
  t = std::clamp(t, 0.0, length_);
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  if (it == nodes_.end()) return values_.back();
  const auto i = static_cast<std::size_t>(it - nodes_.begin());
  const double t0 = nodes_[i - 1];
  const double t1 = nodes_[i];
  const double w = (t - t0) / (t1 - t0);
  return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

bool StarCurve::is_concave(double tol) const noexcept {
  double previous = kInfinity;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double slope = (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]);
    if (slope > previous + tol * (1.0 + std::abs(previous))) return false;
    previous = slope;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Step-function rearrangements

double measure_above(const StepFunction& f, double level) {
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values()[i] > level) total += f.piece_length(i);
  }
  return total;
}

StepFunction decreasing_rearrangement(const StepFunction& f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return f.values()[a] > f.values()[b];
  });
  const double length = f.domain().length();
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  breaks.reserve(f.size() + 1);
  values.reserve(f.size());
  for (std::size_t i : order) {
    breaks.push_back(breaks.back() + f.piece_length(i));
    values.push_back(f.values()[i]);
  }
  breaks.back() = length;
  return StepFunction(Interval(0.0, length), std::move(breaks), std::move(values));
}

StepFunction symmetric_decreasing_rearrangement(const StepFunction& f) {
  const StepFunction dec = decreasing_rearrangement(f);
  const auto s = dec.breakpoints();
  const auto w = dec.values();
  const std::size_t k = w.size();
  std::vector<double> breaks;
  std::vector<double> values;
  breaks.reserve(2 * k);
  values.reserve(2 * k - 1);
  for (std::size_t i = k; i >= 1; --i) breaks.push_back(-0.5 * s[i]);
  for (std::size_t i = k; i >= 2; --i) values.push_back(w[i - 1]);
  values.push_back(w[0]);
  for (std::size_t i = 1; i <= k; ++i) breaks.push_back(0.5 * s[i]);
  for (std::size_t i = 2; i <= k; ++i) values.push_back(w[i - 1]);
  return StepFunction(Interval::centered(f.domain().length()), std::move(breaks),
                      std::move(values));
}

StarCurve star_function(const StepFunction& f) {
  const StepFunction dec = decreasing_rearrangement(f);
  std::vector<double> nodes(dec.breakpoints().begin(), dec.breakpoints().end());
  std::vector<double> values{0.0};
  values.reserve(nodes.size());
  for (std::size_t i = 0; i < dec.size(); ++i) {
    values.push_back(values.back() + dec.values()[i] * dec.piece_length(i));
  }
  return StarCurve(dec.domain().length(), std::move(nodes), std::move(values));
}

double star_function_bruteforce(const StepFunction& f, double t, std::size_t n_grid) {
  const double length = f.domain().length();
  if (n_grid < 16) throw ParameterError("star_function_bruteforce needs n_grid >= 16");
  if (!(t >= 0.0 && t <= length)) {
    throw ParameterError("star_function_bruteforce: t outside [0, |X|]");
  }
  const double h = length / static_cast<double>(n_grid);
  std::vector<double> averages(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double a = f.domain().lo() + h * static_cast<double>(i);
    const double b = i + 1 == n_grid ? f.domain().hi() : a + h;
    averages[i] = integrate(f, a, b) / (b - a);
  }
  std::sort(averages.begin(), averages.end(), std::greater<>());
  const auto whole =
      std::min<std::size_t>(static_cast<std::size_t>(std::floor(t / h)), n_grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < whole; ++i) sum += averages[i];
  double result = sum * h;
  if (whole < n_grid) result += (t - static_cast<double>(whole) * h) * averages[whole];
  return result;
}

double star_margin(const StarCurve& a, const StarCurve& b) {
  if (std::abs(a.length() - b.length()) > length_slack(a.length())) {
    throw ParameterError("star curves have different lengths");
  }
  double margin = kInfinity;
  for (double t : a.nodes()) margin = std::min(margin, b(t) - a(t));
  for (double t : b.nodes()) margin = std::min(margin, b(t) - a(t));
  return margin;
}

bool star_dominates(const StarCurve& a, const StarCurve& b, double tol) {
  return star_margin(a, b) >= -tol;
}

// ---------------------------------------------------------------------------
// LevelSetProfile

LevelSetProfile::LevelSetProfile(const PiecewisePoly& p) : length_(p.domain().length()) {
  auto add = [&](const Quadratic& q, double a, double b) {
    const auto local = LocalQuadratic::of(q, a, b);
    const double start = local.q0;
    const double end = local(local.length);
    Segment seg{local.length, local.q0, local.q1, local.q2,
                std::min(start, end), std::max(start, end),
                end > start ? 1 : (end < start ? -1 : 0)};
    segments_.push_back(seg);
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Quadratic& q = p.piece(i);
    const double a = p.piece_lo(i);
    const double b = p.piece_hi(i);
    if (q.c2 != 0.0) {
      const double vertex = -q.c1 / (2.0 * q.c2);
      if (vertex > a && vertex < b) {
        add(q, a, vertex);
        add(q, vertex, b);
        continue;
      }
    }
    add(q, a, b);
  }
  for (const auto& s : segments_) {
    critical_.push_back(s.low);
    critical_.push_back(s.high);
  }
  std::sort(critical_.begin(), critical_.end(), std::greater<>());
  critical_.erase(std::unique(critical_.begin(), critical_.end()), critical_.end());
  critical_mass_.reserve(critical_.size());
  for (double c : critical_) critical_mass_.push_back(measure_above(c));
}

double LevelSetProfile::measure_above(const Segment& s, double level) noexcept {
  if (level < s.low) return s.length;
  if (level >= s.high) return 0.0;
  // Monotone on the segment: exactly one crossing. The root formula below
  // keeps the denominator free of cancellation for either direction.
  const double sigma = s.direction > 0 ? 1.0 : -1.0;
  const double rhs = level - s.q0;
  const double disc = std::max(0.0, s.q1 * s.q1 + 4.0 * s.q2 * rhs);
  const double denom = s.q1 + sigma * std::sqrt(disc);
  const double root = denom == 0.0 ? 0.0 : std::clamp(2.0 * rhs / denom, 0.0, s.length);
  return s.direction > 0 ? s.length - root : root;
}

double LevelSetProfile::excess(const Segment& s, double level) noexcept {
  if (level >= s.high) return 0.0;
  const LocalQuadratic q{0.0, s.length, s.q0, s.q1, s.q2};
  if (level < s.low) return q.integral(0.0, s.length) - level * s.length;
  const double above = measure_above(s, level);
  const double s0 = s.direction > 0 ? s.length - above : 0.0;
  const double s1 = s.direction > 0 ? s.length : above;
  return std::max(0.0, q.integral(s0, s1) - level * (s1 - s0));
}

double LevelSetProfile::measure_above(double level) const noexcept {
  double total = 0.0;
  for (const auto& s : segments_) total += measure_above(s, level);
  return total;
}

double LevelSetProfile::excess(double level) const noexcept {
  double total = 0.0;
  for (const auto& s : segments_) total += excess(s, level);
  return total;
}

double LevelSetProfile::decreasing_value(double t) const {
  if (t < -length_slack(length_) || t > length_ + length_slack(length_)) {
    throw ParameterError("decreasing rearrangement evaluated outside [0, |X|]");
  }
  if (t <= 0.0) return critical_.front();
  // First critical level whose super-level set is larger than t.
  const auto k = static_cast<std::size_t>(
      std::partition_point(critical_mass_.begin(), critical_mass_.end(),
                           [t](double m) { return m <= t; }) -
      critical_mass_.begin());
  if (k == critical_.size()) return critical_.back();

  // On (critical_[k], critical_[k-1]) each segment is entirely above, entirely
  // below, or crosses; only the crossing ones vary.
  double lo = critical_[k];
  double hi = critical_[k - 1];
  double fixed = 0.0;
  std::vector<const Segment*> active;
  for (const auto& s : segments_) {
    if (s.low >= hi) {
      fixed += s.length;
    } else if (s.direction != 0 && s.low <= lo && s.high >= hi) {
      active.push_back(&s);
    }
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double mass = fixed;
    for (const Segment* s : active) mass += measure_above(*s, mid);
    if (mass <= t) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double LevelSetProfile::symmetric_value(double x) const {
  return decreasing_value(std::min(2.0 * std::abs(x), length_));
}

double LevelSetProfile::star(double t) const {
  const double level = decreasing_value(t);
  return excess(level) + level * std::clamp(t, 0.0, length_);
}

StarCurve star_function(const PiecewisePoly& p, StarMethod method, std::size_t resolution) {
  const double length = p.domain().length();
  if (method == StarMethod::Exact) {
    const std::size_t n = resolution == 0 ? kExactStarNodes : resolution;
    const LevelSetProfile profile(p);
    const auto nodes = uniform_grid(Interval(0.0, length), n + 1);
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = profile.star(nodes[i]);
    values.front() = 0.0;
    return StarCurve(length, nodes, std::move(values));
  }
  const std::size_t n = resolution == 0 ? kSampledStarPoints : resolution;
  const double h = length / static_cast<double>(n);
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    samples[i] = p(p.domain().lo() + h * (static_cast<double>(i) + 0.5));
  }
  std::sort(samples.begin(), samples.end(), std::greater<>());
  std::vector<double> nodes(n + 1);
  std::vector<double> values(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) nodes[i] = h * static_cast<double>(i);
  for (std::size_t i = 0; i < n; ++i) values[i + 1] = values[i] + h * samples[i];
  return StarCurve(length, std::move(nodes), std::move(values));
}

// ---------------------------------------------------------------------------
// Convex means

ConvexMeansResult convex_means_check(const PiecewisePoly& u, const PiecewisePoly& v,
                                     ConvexFamily family, double tol) {
  if (!u.domain().same_as(v.domain())) {
    throw ParameterError("convex_means_check: domain mismatch");
  }
  const double length = u.domain().length();
  const double int_u = integrate(u);
  const double int_v = integrate(v);
  if (family == ConvexFamily::Convex) {
    const double mean_u = int_u / length;
    const double mean_v = int_v / length;
    if (std::abs(mean_u - mean_v) > tol + 1e-12 * (1.0 + std::abs(mean_u))) {
      throw PreconditionError(
          fmt::format("convex family requires equal means (got {:.17g} and {:.17g})",
                      mean_u, mean_v));
    }
  }

  ConvexMeansResult result;
  result.min_margin = kInfinity;
  auto record = [&](double margin, const std::string& label) {
    ++result.tests;
    if (margin < result.min_margin) {
      result.min_margin = margin;
      result.worst = label;
    }
  };

  record(int_v - int_u, "s");
  if (family == ConvexFamily::Convex) {
    record(integrate_square(v) - integrate_square(u), "s^2");
  }
  const Extrema eu = extrema(u);
  const Extrema ev = extrema(v);
  const double lo = std::min(eu.min, ev.min);
  const double hi = std::max(eu.max, ev.max);
  for (std::size_t k = 0; k < kHingeThresholds; ++k) {
    const double c =
        lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kHingeThresholds - 1);
    record(hinge_integral(v, c) - hinge_integral(u, c), fmt::format("max(s - {:.17g}, 0)", c));
  }
  result.pass = result.min_margin >= -tol;
  return result;
}

}  // namespace rodsym
