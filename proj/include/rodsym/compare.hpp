#pragma once

// End-to-end comparison audits: solve with f and with its rearrangement,
// then check that the rearranged solution dominates.
//
//   Robin       f >= 0 on [-pi, pi], v solves with f#
//   Dirichlet   f >= 0 on [-pi, pi], v solves with f#, plus u# <= v pointwise
//   Neumann     \int f = 0, v solves with f* (both zero mean)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rodsym/piecewise.hpp"
#include "rodsym/rearrange.hpp"
#include "rodsym/solver.hpp"

namespace rodsym {

enum class Theorem { Robin, Neumann, Dirichlet, DirichletPointwise };

std::string to_string(Theorem t);

struct Tolerances {
  double star = 1e-6;
  double pointwise = 1e-6;
  double convex = 1e-6;
  double lp = 1e-9;
  double extrema = 1e-9;
};

struct LpMargin {
  double pexp;   // kInfinity for the sup norm
  double margin; // ||v||_p - ||u||_p
};

struct ExtremaMargins {
  double max;  // max v - max u
  double min;  // min u - min v
  double osc;  // osc v - osc u
};

struct ComparisonReport {
  Theorem theorem = Theorem::Robin;
  std::optional<double> alpha;
  double star_margin = 0.0;  // min_t v★(t) - u★(t)
  std::vector<LpMargin> lp_margins;
  std::optional<ExtremaMargins> extrema_margins;
  ConvexMeansResult convex;
  std::optional<double> pointwise_margin;  // min_x v(x) - u#(x)
  Tolerances tolerances;
  bool pass = false;

  // Recomputes `pass` from the margins and tolerances.
  bool evaluate() const;
};

ComparisonReport robin_compare(const StepFunction& f, const RobinParam& alpha,
                               const Tolerances& tol = {});
ComparisonReport neumann_compare(const StepFunction& f, const Tolerances& tol = {});
// With `pointwise`, the report is DirichletPointwise and carries the u# <= v
// margin on a 1001-point grid.
ComparisonReport dirichlet_compare(const StepFunction& f, bool pointwise = true,
                                   const Tolerances& tol = {});

inline constexpr std::size_t kPointwiseGrid = 1001;

// ||u_alpha - u_Dirichlet||_inf for each alpha (increasing, all > 0).
std::vector<double> robin_dirichlet_limit(const StepFunction& f,
                                          const std::vector<double>& alphas);

// Least-squares C in distance ~ C / alpha.
double fit_inverse_rate(const std::vector<double>& alphas,
                        const std::vector<double>& distances);

nlohmann::json to_json(const ComparisonReport& r);

// Corpus audit ------------------------------------------------------------

struct AuditRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  StepFunction source;
  ComparisonReport report;
};

struct AuditSummary {
  Theorem theorem = Theorem::Robin;
  std::uint64_t seed = 0;
  std::vector<AuditRecord> records;
  std::size_t passed = 0;
  double worst_star_margin = kInfinity;
  double worst_lp_margin = kInfinity;

  bool pass() const noexcept { return passed == records.size(); }
};

// Robin: random nonnegative f on [-pi, pi] with random alpha in (0, 10].
// Dirichlet: random nonnegative f on [-pi, pi], pointwise check included.
// Neumann: random zero-mean f on [0, pi].
AuditSummary run_audit(Theorem theorem, std::size_t count, std::uint64_t seed,
                       const Tolerances& tol = {});

nlohmann::json to_json(const AuditRecord& r);
nlohmann::json to_json(const AuditSummary& s);  // summary line only

}  // namespace rodsym
