#include "rodsym/gap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "rodsym/corpus.hpp"
#include "rodsym/errors.hpp"
#include "rodsym/parallel.hpp"

namespace rodsym {

namespace {

constexpr double kHalfPi = 0.5 * kPi;
constexpr double kTieTol = 1e-12;

void require_alpha(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    throw ParameterError("gap: alpha must be positive and finite");
  }
}

double checked_center(double b) {
  const double slack = kBreakpointMergeTol * kHalfPi;
  if (!(b >= -kHalfPi - slack && b <= kHalfPi + slack)) {
    throw ParameterError(fmt::format("gap: center {} outside [-pi/2, pi/2]", b));
  }
  return std::clamp(b, -kHalfPi, kHalfPi);
}

// Closed forms on the left half b <= 0.
double left_gap(double a, double b) {
  const double s = 1.0 + a * kPi;
  return -kPi * (1.0 + a * (b + kPi)) * (-3.0 * kPi * s + b * (4.0 + 3.0 * a * kPi)) /
         (8.0 * s * s);
}

double left_slope(double a, double b) {
  const double s = 1.0 + a * kPi;
  return -kPi * (2.0 + 2.0 * a * kPi + a * b * (4.0 + 3.0 * a * kPi)) / (4.0 * s * s);
}

bool clearly_better(double candidate, double incumbent) {
  return candidate > incumbent + kTieTol * std::max(1.0, std::abs(incumbent));
}

// Gap of chi_E on a uniform cell grid, using the same moment closed form as
// robin_solve but without building intermediate objects.
class CellGap {
 public:
  CellGap(const RobinParam& alpha, std::size_t n_cells)
      : c_(alpha.c_alpha()), n_(n_cells), h_(2.0 * kPi / static_cast<double>(n_cells)) {}

  double operator()(const std::vector<char>& mask) const {
    double t0 = 0.0;
    double t1 = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (mask[j]) {
        t0 += h_;
        t1 += h_ * (edge(j) + 0.5 * h_);
      }
    }
    const double k0 = 0.5 * t0 - 0.5 * c_ * t1;
    const double k1 = -0.5 * t1 + t0 / (2.0 * c_);
    double lo = kInfinity;
    double hi = -kInfinity;
    double m0 = 0.0;  // \int_{-pi}^{x_j} f
    double m1 = 0.0;  // \int_{-pi}^{x_j} y f
    for (std::size_t j = 0; j < n_; ++j) {
      const double a = edge(j);
      const double b = a + h_;
      const double v = mask[j] ? 1.0 : 0.0;
      const double q0 = (m1 - 0.5 * v * a * a) + k1;
      const double q1 = -(m0 - v * a) + k0;
      const double q2 = -0.5 * v;
      auto eval = [&](double x) { return q0 + x * (q1 + x * q2); };
      for (double x : {a, b}) {
        const double y = eval(x);
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
      if (q2 != 0.0) {
        const double vertex = -q1 / (2.0 * q2);
        if (vertex > a && vertex < b) {
          const double y = eval(vertex);
          lo = std::min(lo, y);
          hi = std::max(hi, y);
        }
      }
      m0 += v * h_;
      m1 += v * h_ * (a + 0.5 * h_);
    }
    return hi - lo;
  }

 private:
  double edge(std::size_t j) const { return -kPi + h_ * static_cast<double>(j); }

  double c_;
  std::size_t n_;
  double h_;
};

std::size_t cells_for_measure(std::size_t n_cells, double measure) {
  if (n_cells < 8 || n_cells % 2 != 0) {
    throw ParameterError("extremal search needs an even number of cells, at least 8");
  }
  const double width = 2.0 * kPi / static_cast<double>(n_cells);
  const double k = measure / width;
  const double rounded = std::round(k);
  if (!std::isfinite(k) || std::abs(k - rounded) > 1e-9 * std::max(1.0, k) || rounded < 1.0 ||
      rounded > static_cast<double>(n_cells)) {
    throw ParameterError(fmt::format(
        "measure {} is not a positive multiple of the cell width 2pi/{}", measure, n_cells));
  }
  return static_cast<std::size_t>(rounded);
}

std::vector<char> to_mask(const std::vector<std::size_t>& cells, std::size_t n) {
  std::vector<char> mask(n, 0);
  for (std::size_t c : cells) mask.at(c) = 1;
  return mask;
}

std::vector<std::size_t> to_cells(const std::vector<char>& mask) {
  std::vector<std::size_t> cells;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) cells.push_back(j);
  }
  return cells;
}

StepFunction cell_indicator(std::size_t n_cells, const std::vector<std::size_t>& cells) {
  std::vector<double> values(n_cells, 0.0);
  for (std::size_t c : cells) values.at(c) = 1.0;
  return StepFunction::uniform(rod_domain(), std::move(values));
}

struct Candidate {
  std::vector<std::size_t> cells;
  double gap = -kInfinity;
  std::size_t evaluated = 0;

  void offer(const std::vector<std::size_t>& c, double g) {
    if (cells.empty() || clearly_better(g, gap) ||
        (!clearly_better(gap, g) && c < cells)) {
      cells = c;
      gap = g;
    }
  }
};

// Advances a sorted k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Candidate exhaustive(const CellGap& gap, std::size_t n, std::size_t k) {
  // One block per first cell; blocks are reduced in order.
  const std::size_t blocks = n - k + 1;
  std::vector<Candidate> best(blocks);
  parallel_for(blocks, [&](std::size_t first) {
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), first);
    std::vector<char> mask(n);
    do {
      std::fill(mask.begin(), mask.end(), 0);
      for (std::size_t c : comb) mask[c] = 1;
      best[first].offer(comb, gap(mask));
      ++best[first].evaluated;
    } while (next_combination(comb, n) && comb.front() == first);
  });
  Candidate total;
  for (const auto& b : best) {
    total.offer(b.cells, b.gap);
    total.evaluated += b.evaluated;
  }
  return total;
}

Candidate climb(const CellGap& gap, std::size_t n, std::size_t k, std::uint64_t seed,
                std::size_t start) {
  auto rng = instance_rng(seed, start);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> mask(n, 0);
  for (std::size_t i = 0; i < k; ++i) mask[order[i]] = 1;

  Candidate current;
  current.cells = to_cells(mask);
  current.gap = gap(mask);
  current.evaluated = 1;
  while (true) {
    Candidate step;
    for (std::size_t out = 0; out < n; ++out) {
      if (!mask[out]) continue;
      for (std::size_t in = 0; in < n; ++in) {
        if (mask[in]) continue;
        mask[out] = 0;
        mask[in] = 1;
        step.offer(to_cells(mask), gap(mask));
        ++current.evaluated;
        mask[in] = 0;
        mask[out] = 1;
      }
    }
    if (step.cells.empty() || !clearly_better(step.gap, current.gap)) break;
    current.cells = step.cells;
    current.gap = step.gap;
    mask = to_mask(current.cells, n);
  }
  return current;
}

ExtremalResult finish(const RobinParam& alpha, std::size_t n, const Candidate& c,
                      bool exhaustive) {
  ExtremalResult r{c.cells, cell_indicator(n, c.cells), 0.0, exhaustive, c.evaluated};
  r.best_gap = cell_set_gap(alpha, n, c.cells);
  return r;
}

}  // namespace

std::pair<PiecewisePoly, PiecewisePoly> example_solutions(const RobinParam& alpha) {
  const double c = alpha.c_alpha();
  const Interval rod = rod_domain();

  const PiecewisePoly u1(rod, {-kPi, 0.0, kPi},
                         {Quadratic{kPi * kPi / 2.0, kPi, 0.5},
                          Quadratic{kPi * kPi / 2.0, kPi, 0.0}});
  const PiecewisePoly u_line(rod, {-kPi, kPi},
                             {Quadratic{kPi / (2.0 * c) + kPi * kPi / 4.0,
                                        kPi / 2.0 + kPi * kPi * c / 4.0, 0.0}});

  const PiecewisePoly v1(rod, {-kPi, -kHalfPi, kHalfPi, kPi},
                         {Quadratic{0.0, 0.0, 0.0},
                          Quadratic{kPi * kPi / 8.0, kPi / 2.0, 0.5},
                          Quadratic{0.0, kPi, 0.0}});
  const PiecewisePoly v_line(rod, {-kPi, kPi},
                             {Quadratic{kPi / (2.0 * c), kPi / 2.0, 0.0}});

  return {u_line - u1, v_line - v1};
}

double gap_formula(double alpha, double b) {
  require_alpha(alpha);
  return left_gap(alpha, -std::abs(checked_center(b)));
}

GapDerivatives gap_derivatives(double alpha, double b) {
  require_alpha(alpha);
  const double center = checked_center(b);
  const double s = 1.0 + alpha * kPi;
  const double d1 = center > 0.0 ? -left_slope(alpha, -center) : left_slope(alpha, center);
  const double d2 = -alpha * kPi * (4.0 + 3.0 * alpha * kPi) / (4.0 * s * s);
  return {d1, d2};
}

std::optional<double> b_crit(double alpha) {
  require_alpha(alpha);
  if (alpha <= kGapThreshold) return std::nullopt;
  return -2.0 * (1.0 + alpha * kPi) / (alpha * (4.0 + 3.0 * alpha * kPi));
}

double gap_numeric(const RobinParam& alpha, double b) {
  const double center = checked_center(b);
  const auto source = StepFunction::indicator(rod_domain(), center - kHalfPi, center + kHalfPi);
  return extrema(robin_solve(source, alpha)).osc();
}

double GapScanResult::max_discrepancy() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < gaps_numeric.size(); ++i) {
    worst = std::max(worst, std::abs(gaps_numeric[i] - gaps_formula[i]));
  }
  return worst;
}

GapScanResult gap_scan(const RobinParam& alpha, std::size_t n_grid) {
  if (n_grid < 2) throw ParameterError("gap_scan needs at least two grid points");
  GapScanResult r;
  r.alpha = alpha.alpha();
  r.b_values = uniform_grid(Interval(-kHalfPi, kHalfPi), n_grid);
  r.gaps_numeric.reserve(n_grid);
  r.gaps_formula.reserve(n_grid);
  std::size_t best = 0;
  for (std::size_t i = 0; i < n_grid; ++i) {
    r.gaps_numeric.push_back(gap_numeric(alpha, r.b_values[i]));
    r.gaps_formula.push_back(gap_formula(alpha.alpha(), r.b_values[i]));
    if (clearly_better(r.gaps_numeric[i], r.gaps_numeric[best])) best = i;
  }
  r.argmax_numeric = r.b_values[best];
  r.b_crit_formula = b_crit(alpha.alpha());
  return r;
}

double cell_set_gap(const RobinParam& alpha, std::size_t n_cells,
                    const std::vector<std::size_t>& cells) {
  return extrema(robin_solve(cell_indicator(n_cells, cells), alpha)).osc();
}

ExtremalResult extremal_search(const RobinParam& alpha, std::size_t n_cells, double measure,
                               std::uint64_t seed) {
  const std::size_t k = cells_for_measure(n_cells, measure);
  const CellGap gap(alpha, n_cells);
  if (n_cells <= kExhaustiveCellLimit) {
    return finish(alpha, n_cells, exhaustive(gap, n_cells, k), true);
  }
  std::vector<Candidate> runs(kSearchRestarts);
  parallel_for(kSearchRestarts, [&](std::size_t s) { runs[s] = climb(gap, n_cells, k, seed, s); });
  Candidate total;
  for (const auto& r : runs) {
    total.offer(r.cells, r.gap);
    total.evaluated += r.evaluated;
  }
  return finish(alpha, n_cells, total, false);
}

ExtremalResult best_interval_candidate(const RobinParam& alpha, std::size_t n_cells,
                                       double measure) {
  const std::size_t k = cells_for_measure(n_cells, measure);
  const CellGap gap(alpha, n_cells);
  Candidate best;
  for (std::size_t first = 0; first + k <= n_cells; ++first) {
    std::vector<std::size_t> cells(k);
    std::iota(cells.begin(), cells.end(), first);
    best.offer(cells, gap(to_mask(cells, n_cells)));
    ++best.evaluated;
  }
  return finish(alpha, n_cells, best, true);
}

}  // namespace rodsym
