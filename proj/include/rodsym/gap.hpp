#pragma once

// Temperature gap max u - min u for Robin solutions with an indicator
// source. The closed forms cover sources I_b = [b - pi/2, b + pi/2] of
// length pi; extremal_search explores unions of grid cells.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "rodsym/piecewise.hpp"
#include "rodsym/solver.hpp"

namespace rodsym {

// Below or at this alpha the gap is maximized by an interval at either end.
inline constexpr double kGapThreshold = 2.0 * std::numbers::inv_sqrt3 / std::numbers::pi;

inline constexpr std::size_t kDefaultGapGrid = 2001;

// Explicit Robin solutions with sources chi_[-pi,0] (u) and chi_[-pi/2,pi/2] (v).
std::pair<PiecewisePoly, PiecewisePoly> example_solutions(const RobinParam& alpha);

// Closed-form gap for the source I_b, b in [-pi/2, pi/2]. The polynomial
// closed form is valid for b <= 0 and is mirrored (Gap(a, b) = Gap(a, -b)) for b > 0.
double gap_formula(double alpha, double b);

struct GapDerivatives {
  double d1;  // dGap/db; the left derivative at b = 0
  double d2;  // d^2 Gap/db^2
};

GapDerivatives gap_derivatives(double alpha, double b);

// -2(1 + a pi) / (a(4 + 3 a pi)) for alpha > kGapThreshold, otherwise none.
std::optional<double> b_crit(double alpha);

// max - min of robin_solve(chi_{I_b}).
double gap_numeric(const RobinParam& alpha, double b);

struct GapScanResult {
  double alpha = 0.0;
  std::vector<double> b_values;
  std::vector<double> gaps_numeric;
  std::vector<double> gaps_formula;
  double argmax_numeric = 0.0;  // ties go to the smallest b
  std::optional<double> b_crit_formula;

  double max_discrepancy() const noexcept;
};

// Uniform b-grid of n_grid >= 2 points on [-pi/2, pi/2].
GapScanResult gap_scan(const RobinParam& alpha, std::size_t n_grid = kDefaultGapGrid);

struct ExtremalResult {
  std::vector<std::size_t> cells;  // ascending cell indices forming E
  StepFunction best_set;           // chi_E on [-pi, pi]
  double best_gap = 0.0;
  bool exhaustive = false;
  std::size_t evaluated = 0;
};

inline constexpr std::size_t kExhaustiveCellLimit = 24;
inline constexpr std::size_t kSearchRestarts = 64;

// Maximizes the gap over chi_E, E a union of cells of an n_cells-uniform
// partition of [-pi, pi] with |E| = measure. Exhaustive for n_cells <= 24,
// otherwise steepest-ascent single swaps from 64 seeded random starts. Ties
// go to the lexicographically smallest cell set.
ExtremalResult extremal_search(const RobinParam& alpha, std::size_t n_cells,
                               double measure = kPi, std::uint64_t seed = 0);

// Best contiguous run of cells with the given measure on the same grid.
ExtremalResult best_interval_candidate(const RobinParam& alpha, std::size_t n_cells,
                                       double measure = kPi);

// Gap of chi_E for the given cell set.
double cell_set_gap(const RobinParam& alpha, std::size_t n_cells,
                    const std::vector<std::size_t>& cells);

}  // namespace rodsym
