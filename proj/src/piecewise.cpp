#include "rodsym/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rodsym/errors.hpp"
#include "local_quadratic.hpp"

namespace rodsym {

namespace {

double position_slack(const Interval& d) {
  return kBreakpointMergeTol *
         std::max({1.0, std::abs(d.lo()), std::abs(d.hi())});
}

// Validates a breakpoint/payload pair against the domain and fuses
// breakpoints that are closer than kBreakpointMergeTol.
template <class T>
void normalize_pieces(const Interval& domain, std::vector<double>& breaks,
                      std::vector<T>& payload, const char* what) {
  using namespace std::string_literals;
  if (breaks.size() < 2) {
    throw ParameterError(what + ": need at least two breakpoints"s);
  }
  if (payload.size() + 1 != breaks.size()) {
    throw ParameterError(what + ": expected one value per piece"s);
  }
  for (double b : breaks) {
    if (!std::isfinite(b)) throw ParameterError(what + ": non-finite breakpoint"s);
  }
  const double slack = position_slack(domain);
  if (std::abs(breaks.front() - domain.lo()) > slack ||
      std::abs(breaks.back() - domain.hi()) > slack) {
    throw ParameterError(what + ": breakpoints must start at lo and end at hi"s);
  }
  breaks.front() = domain.lo();
  breaks.back() = domain.hi();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] < breaks[i] - kBreakpointMergeTol) {
      throw ParameterError(what + ": breakpoints must be increasing"s);
    }
  }

  std::vector<double> out_breaks{breaks.front()};
  std::vector<T> out_payload;
  out_breaks.reserve(breaks.size());
  out_payload.reserve(payload.size());
  for (std::size_t i = 0; i < payload.size(); ++i) {
    const double right = breaks[i + 1];
    if (right - out_breaks.back() < kBreakpointMergeTol) {
      // Zero-width piece; a trailing one stretches its left neighbour to hi.
      if (i + 1 == payload.size() && !out_payload.empty()) {
        out_breaks.back() = right;
      }
      continue;
    }
    out_breaks.push_back(right);
    out_payload.push_back(std::move(payload[i]));
  }
  if (out_payload.empty()) {
    out_breaks = {domain.lo(), domain.hi()};
    out_payload.push_back(std::move(payload.front()));
  }
  breaks = std::move(out_breaks);
  payload = std::move(out_payload);
}

std::size_t locate(std::span<const double> breaks, const Interval& domain,
                   double x) {
  const double slack = position_slack(domain);
  if (!(x >= domain.lo() - slack && x <= domain.hi() + slack)) {
    throw DomainError("point " + std::to_string(x) + " outside [" +
                      std::to_string(domain.lo()) + ", " +
                      std::to_string(domain.hi()) + "]");
  }
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  const auto pieces = breaks.size() - 1;
  if (it == breaks.begin()) return 0;
  return std::min<std::size_t>(static_cast<std::size_t>(it - breaks.begin()) - 1,
                               pieces - 1);
}

void check_range(const Interval& d, double a, double b) {
  const double slack = position_slack(d);
  if (!(a >= d.lo() - slack && b <= d.hi() + slack)) {
    throw DomainError("integration range outside domain");
  }
}

std::vector<double> merged_breakpoints(std::span<const double> a,
                                       std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  std::vector<double> fused{out.front()};
  for (double x : out) {
    if (x - fused.back() >= kBreakpointMergeTol) fused.push_back(x);
  }
  fused.back() = out.back();
  return fused;
}

// Sums on_segment over the sub-intervals of the piece delimited by the
// crossings of `level`; q - level has constant sign on each of them.
template <class Fn>
double split_integral(const LocalQuadratic& q, double level, Fn&& on_segment) {
  double total = 0.0;
  double left = 0.0;
  const auto roots = q.crossings(level);
  for (std::size_t r = 0; r <= roots.size(); ++r) {
    const double right = r < roots.size() ? roots[r] : q.length;
    if (right > left) total += on_segment(left, right);
    left = right;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// Interval

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ParameterError("interval requires finite lo < hi");
  }
}

Interval Interval::centered(double length) {
  return Interval(-0.5 * length, 0.5 * length);
}

bool Interval::same_as(const Interval& other) const noexcept {
  const double slack = position_slack(*this);
  return std::abs(lo_ - other.lo_) <= slack && std::abs(hi_ - other.hi_) <= slack;
}

Interval rod_domain() { return Interval(-kPi, kPi); }

std::vector<double> uniform_grid(const Interval& domain, std::size_t n) {
  if (n < 2) throw ParameterError("grid needs at least two points");
  std::vector<double> xs(n);
  const double h = domain.length() / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = domain.lo() + h * static_cast<double>(i);
  }
  xs.back() = domain.hi();
  return xs;
}

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(Interval domain, std::vector<double> breakpoints,
                           std::vector<double> values)
    : domain_(domain), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("step function: non-finite value");
  }
  normalize_pieces(domain_, breakpoints_, values_, "step function");
}

StepFunction StepFunction::constant(Interval domain, double value) {
  return StepFunction(domain, {domain.lo(), domain.hi()}, {value});
}

StepFunction StepFunction::indicator(Interval domain, double a, double b,
                                     double height) {
  const double lo = std::clamp(a, domain.lo(), domain.hi());
  const double hi = std::clamp(b, domain.lo(), domain.hi());
  if (!(lo < hi)) return constant(domain, 0.0);
  return StepFunction(domain, {domain.lo(), lo, hi, domain.hi()},
                      {0.0, height, 0.0});
}

StepFunction StepFunction::uniform(Interval domain, std::vector<double> values) {
  if (values.empty()) throw ParameterError("uniform step function needs values");
  auto breaks = uniform_grid(domain, values.size() + 1);
  return StepFunction(domain, std::move(breaks), std::move(values));
}

std::size_t StepFunction::piece_index(double x) const {
  return locate(breakpoints_, domain_, x);
}

double StepFunction::operator()(double x) const { return values_[piece_index(x)]; }

double StepFunction::integral() const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += values_[i] * piece_length(i);
  return total;
}

double StepFunction::max_value() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

double StepFunction::min_value() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double StepFunction::sup_norm() const noexcept {
  return std::max(std::abs(max_value()), std::abs(min_value()));
}

double StepFunction::l1_norm() const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    total += std::abs(values_[i]) * piece_length(i);
  }
  return total;
}

StepFunction StepFunction::translated_to(double new_lo) const {
  const double shift = new_lo - domain_.lo();
  std::vector<double> breaks(breakpoints_.begin(), breakpoints_.end());
  for (double& b : breaks) b += shift;
  const Interval moved(new_lo, new_lo + domain_.length());
  breaks.front() = moved.lo();
  breaks.back() = moved.hi();
  return StepFunction(moved, std::move(breaks), values_);
}

StepFunction StepFunction::scaled(double factor) const {
  std::vector<double> vals = values_;
  for (double& v : vals) v *= factor;
  return StepFunction(domain_, breakpoints_, std::move(vals));
}

// ---------------------------------------------------------------------------
// PiecewisePoly

PiecewisePoly::PiecewisePoly(Interval domain, std::vector<double> breakpoints,
                             std::vector<Quadratic> coeffs, bool continuous)
    : domain_(domain),
      breakpoints_(std::move(breakpoints)),
      coeffs_(std::move(coeffs)),
      continuous_(continuous) {
  for (const auto& q : coeffs_) {
    if (!std::isfinite(q.c0) || !std::isfinite(q.c1) || !std::isfinite(q.c2)) {
      throw ParameterError("piecewise polynomial: non-finite coefficient");
    }
  }
  normalize_pieces(domain_, breakpoints_, coeffs_, "piecewise polynomial");
  if (continuous_ && !is_continuous()) {
    throw ParameterError("piecewise polynomial flagged continuous has a jump of " +
                         std::to_string(max_jump()));
  }
}

PiecewisePoly PiecewisePoly::zero(Interval domain) { return constant(domain, 0.0); }

PiecewisePoly PiecewisePoly::constant(Interval domain, double value) {
  return PiecewisePoly(domain, {domain.lo(), domain.hi()}, {Quadratic{value, 0, 0}},
                       true);
}

PiecewisePoly PiecewisePoly::from_step(const StepFunction& f) {
  std::vector<Quadratic> coeffs;
  coeffs.reserve(f.size());
  for (double v : f.values()) coeffs.push_back({v, 0.0, 0.0});
  return PiecewisePoly(f.domain(), {f.breakpoints().begin(), f.breakpoints().end()},
                       std::move(coeffs));
}

std::size_t PiecewisePoly::piece_index(double x) const {
  return locate(breakpoints_, domain_, x);
}

double PiecewisePoly::operator()(double x) const { return coeffs_[piece_index(x)](x); }

double PiecewisePoly::derivative(double x) const {
  return coeffs_[piece_index(x)].derivative(x);
}

double PiecewisePoly::max_jump() const noexcept {
  double jump = 0.0;
  for (std::size_t i = 0; i + 1 < size(); ++i) {
    const double b = breakpoints_[i + 1];
    jump = std::max(jump, std::abs(coeffs_[i](b) - coeffs_[i + 1](b)));
  }
  return jump;
}

bool PiecewisePoly::is_continuous(double tol) const noexcept {
  for (std::size_t i = 0; i + 1 < size(); ++i) {
    const double b = breakpoints_[i + 1];
    const double left = coeffs_[i](b);
    const double right = coeffs_[i + 1](b);
    if (std::abs(left - right) > tol * (1.0 + std::abs(left))) return false;
  }
  return true;
}

PiecewisePoly PiecewisePoly::antiderivative(double value_at_lo) const {
  std::vector<Quadratic> out;
  out.reserve(size());
  double acc = value_at_lo;
  for (std::size_t i = 0; i < size(); ++i) {
    const Quadratic& q = coeffs_[i];
    if (q.c2 != 0.0) {
      throw ParameterError("antiderivative would exceed degree 2");
    }
    const double a = breakpoints_[i];
    const double b = breakpoints_[i + 1];
    out.push_back({acc - q.c0 * a - 0.5 * q.c1 * a * a, q.c0, 0.5 * q.c1});
    acc += (b - a) * (q.c0 + 0.5 * q.c1 * (a + b));
  }
  return PiecewisePoly(domain_, breakpoints_, std::move(out), true);
}

PiecewisePoly PiecewisePoly::plus_constant(double c) const {
  auto coeffs = coeffs_;
  for (auto& q : coeffs) q.c0 += c;
  return PiecewisePoly(domain_, breakpoints_, std::move(coeffs), continuous_);
}

PiecewisePoly PiecewisePoly::scaled(double factor) const {
  auto coeffs = coeffs_;
  for (auto& q : coeffs) q = factor * q;
  return PiecewisePoly(domain_, breakpoints_, std::move(coeffs), continuous_);
}

namespace {

template <class Op>
PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op) {
  if (!a.domain().same_as(b.domain())) {
    throw DomainError("piecewise polynomials live on different domains");
  }
  auto breaks = merged_breakpoints(a.breakpoints(), b.breakpoints());
  std::vector<Quadratic> coeffs;
  coeffs.reserve(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    coeffs.push_back(op(a.piece(a.piece_index(mid)), b.piece(b.piece_index(mid))));
  }
  return PiecewisePoly(a.domain(), std::move(breaks), std::move(coeffs),
                       a.continuous() && b.continuous());
}

}  // namespace

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
  return combine(a, b, [](const Quadratic& x, const Quadratic& y) { return x + y; });
}

PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
  return combine(a, b, [](const Quadratic& x, const Quadratic& y) { return x - y; });
}

// ---------------------------------------------------------------------------
// Integration

double integrate(const StepFunction& f, double a, double b) {
  if (a > b) return -integrate(f, b, a);
  check_range(f.domain(), a, b);
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double lo = std::max(a, f.piece_lo(i));
    const double hi = std::min(b, f.piece_hi(i));
    if (hi > lo) total += f.values()[i] * (hi - lo);
  }
  return total;
}

double integrate(const PiecewisePoly& p, double a, double b) {
  if (a > b) return -integrate(p, b, a);
  check_range(p.domain(), a, b);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double lo = std::max(a, p.piece_lo(i));
    const double hi = std::min(b, p.piece_hi(i));
    if (hi > lo) total += integrate_quadratic(p.piece(i), lo, hi);
  }
  return total;
}

double integrate(const PiecewisePoly& p) {
  return integrate(p, p.domain().lo(), p.domain().hi());
}

double moment(const StepFunction& f, int k) {
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = f.piece_lo(i);
    const double b = f.piece_hi(i);
    const double v = f.values()[i];
    switch (k) {
      case 0: total += v * (b - a); break;
      case 1: total += v * (b - a) * (a + b) / 2.0; break;
      case 2: total += v * (b - a) * (a * a + a * b + b * b) / 3.0; break;
      default: throw ParameterError("moment order must be 0, 1 or 2");
    }
  }
  return total;
}

double integrate_product(const StepFunction& f, const StepFunction& g) {
  if (!f.domain().same_as(g.domain())) {
    throw ParameterError("integrate_product: domain mismatch");
  }
  const auto breaks = merged_breakpoints(f.breakpoints(), g.breakpoints());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    total += f(mid) * g(mid) * (breaks[i + 1] - breaks[i]);
  }
  return total;
}

double total_variation(const StepFunction& f, bool with_boundary) {
  const auto v = f.values();
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) tv += std::abs(v[i + 1] - v[i]);
  if (with_boundary) tv += std::abs(v.front()) + std::abs(v.back());
  return tv;
}

CumulativeMoments cumulative_moments(const StepFunction& f) {
  std::vector<Quadratic> m0;
  std::vector<Quadratic> m1;
  m0.reserve(f.size());
  m1.reserve(f.size());
  double acc0 = 0.0;
  double acc1 = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = f.piece_lo(i);
    const double b = f.piece_hi(i);
    const double v = f.values()[i];
    m0.push_back({acc0 - v * a, v, 0.0});
    m1.push_back({acc1 - 0.5 * v * a * a, 0.0, 0.5 * v});
    acc0 += v * (b - a);
    acc1 += v * (b - a) * (a + b) / 2.0;
  }
  std::vector<double> breaks(f.breakpoints().begin(), f.breakpoints().end());
  return {PiecewisePoly(f.domain(), breaks, std::move(m0), true),
          PiecewisePoly(f.domain(), breaks, std::move(m1), true)};
}

// ---------------------------------------------------------------------------
// Extrema and norms

Extrema extrema(const PiecewisePoly& p) {
  Extrema e;
  bool first = true;
  auto consider = [&](double x, double value) {
    if (first) {
      e = {value, x, value, x};
      first = false;
      return;
    }
    if (value < e.min) { e.min = value; e.argmin = x; }
    if (value > e.max) { e.max = value; e.argmax = x; }
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Quadratic& q = p.piece(i);
    const double a = p.piece_lo(i);
    const double b = p.piece_hi(i);
    consider(a, q(a));
    if (q.c2 != 0.0) {
      const double vertex = -q.c1 / (2.0 * q.c2);
      if (vertex > a && vertex < b) consider(vertex, q(vertex));
    }
    consider(b, q(b));
  }
  return e;
}

double hinge_integral(const PiecewisePoly& p, double level) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto q = LocalQuadratic::of(p.piece(i), p.piece_lo(i), p.piece_hi(i));
    total += split_integral(q, level, [&](double s0, double s1) {
      const double mid = q(0.5 * (s0 + s1));
      return mid > level ? q.integral(s0, s1) - level * (s1 - s0) : 0.0;
    });
  }
  return total;
}

double integrate_square(const PiecewisePoly& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += LocalQuadratic::of(p.piece(i), p.piece_lo(i), p.piece_hi(i))
                 .integral_of_square();
  }
  return total;
}

double lp_norm(const PiecewisePoly& p, double pexp) {
  if (std::isnan(pexp) || pexp < 1.0) {
    throw ParameterError("lp_norm requires exponent >= 1");
  }
  if (std::isinf(pexp)) {
    const Extrema e = extrema(p);
    return std::max(std::abs(e.min), std::abs(e.max));
  }
  if (pexp == 2.0) return std::sqrt(integrate_square(p));

  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto q = LocalQuadratic::of(p.piece(i), p.piece_lo(i), p.piece_hi(i));
    total += split_integral(q, 0.0, [&](double s0, double s1) {
      if (pexp == 1.0) return std::abs(q.integral(s0, s1));
      auto integrand = [&](double s) { return std::pow(std::abs(q(s)), pexp); };
      return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          integrand, s0, s1, 15, 1e-11);
    });
  }
  return pexp == 1.0 ? total : std::pow(total, 1.0 / pexp);
}

double sup_distance(const PiecewisePoly& a, const PiecewisePoly& b) {
  const Extrema e = extrema(a - b);
  return std::max(std::abs(e.min), std::abs(e.max));
}

}  // namespace rodsym
