#include "rodsym/compare.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rodsym/corpus.hpp"
#include "rodsym/errors.hpp"
#include "rodsym/json_io.hpp"
#include "rodsym/parallel.hpp"

namespace rodsym {

namespace {

constexpr double kLpExponents[] = {1.0, 2.0, kInfinity};

void require_nonnegative(const StepFunction& f, const char* who) {
  if (f.min_value() < 0.0) {
    throw PreconditionError(fmt::format("{}: source must be nonnegative (min {})", who,
                                        f.min_value()));
  }
}

void fill_common(ComparisonReport& r, const PiecewisePoly& u, const PiecewisePoly& v,
                 ConvexFamily family) {
  r.star_margin = star_margin(star_function(u), star_function(v));
  for (double p : kLpExponents) {
    r.lp_margins.push_back({p, lp_norm(v, p) - lp_norm(u, p)});
  }
  r.convex = convex_means_check(u, v, family, r.tolerances.convex);
}

// Mirrors the solver's mean audit: |\int u| / |X| within kResidualTol (1 + ||f||_1).
void require_zero_mean(const PiecewisePoly& u, const StepFunction& f) {
  const double mean = integrate(u) / u.domain().length();
  if (std::abs(mean) > kResidualTol * (1.0 + f.l1_norm())) {
    throw InternalError(fmt::format("Neumann solution has mean {:.3e}", mean));
  }
}

ComparisonReport symmetric_compare(const StepFunction& f, const BoundaryCondition& bc,
                                   const Tolerances& tol, Theorem theorem) {
  const PiecewisePoly u = solve(f, bc);
  const PiecewisePoly v = solve(symmetric_decreasing_rearrangement(f), bc);
  ComparisonReport r;
  r.theorem = theorem;
  r.tolerances = tol;
  fill_common(r, u, v, ConvexFamily::IncreasingConvex);
  if (theorem == Theorem::DirichletPointwise) {
    const LevelSetProfile profile(u);
    double margin = kInfinity;
    for (double x : uniform_grid(f.domain(), kPointwiseGrid)) {
      margin = std::min(margin, v(x) - profile.symmetric_value(x));
    }
    r.pointwise_margin = margin;
  }
  r.pass = r.evaluate();
  return r;
}

std::string pexp_label(double p) {
  if (std::isinf(p)) return "inf";
  return fmt::format("{}", p);
}

}  // namespace

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::Robin: return "robin";
    case Theorem::Neumann: return "neumann";
    case Theorem::Dirichlet: return "dirichlet";
    case Theorem::DirichletPointwise: return "dirichlet_pointwise";
  }
  return "unknown";
}

bool ComparisonReport::evaluate() const {
  bool ok = star_margin >= -tolerances.star && convex.pass;
  for (const auto& m : lp_margins) ok = ok && m.margin >= -tolerances.lp;
  if (extrema_margins) {
    ok = ok && extrema_margins->max >= -tolerances.extrema &&
         extrema_margins->min >= -tolerances.extrema &&
         extrema_margins->osc >= -tolerances.extrema;
  }
  if (pointwise_margin) ok = ok && *pointwise_margin >= -tolerances.pointwise;
  return ok;
}

ComparisonReport robin_compare(const StepFunction& f, const RobinParam& alpha,
                               const Tolerances& tol) {
  require_nonnegative(f, "robin_compare");
  auto r = symmetric_compare(f, BoundaryCondition::robin(alpha), tol, Theorem::Robin);
  r.alpha = alpha.alpha();
  return r;
}

ComparisonReport dirichlet_compare(const StepFunction& f, bool pointwise,
                                   const Tolerances& tol) {
  require_nonnegative(f, "dirichlet_compare");
  return symmetric_compare(f, BoundaryCondition::dirichlet(), tol,
                           pointwise ? Theorem::DirichletPointwise : Theorem::Dirichlet);
}

ComparisonReport neumann_compare(const StepFunction& f, const Tolerances& tol) {
  const PiecewisePoly u = neumann_solve(f);
  const StepFunction rearranged = decreasing_rearrangement(f).translated_to(f.domain().lo());
  const PiecewisePoly v = neumann_solve(rearranged);
  require_zero_mean(u, f);
  require_zero_mean(v, f);

  ComparisonReport r;
  r.theorem = Theorem::Neumann;
  r.tolerances = tol;
  fill_common(r, u, v, ConvexFamily::Convex);
  const Extrema eu = extrema(u);
  const Extrema ev = extrema(v);
  r.extrema_margins = ExtremaMargins{ev.max - eu.max, eu.min - ev.min, ev.osc() - eu.osc()};
  r.pass = r.evaluate();
  return r;
}

std::vector<double> robin_dirichlet_limit(const StepFunction& f,
                                          const std::vector<double>& alphas) {
  require_nonnegative(f, "robin_dirichlet_limit");
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    if (!(alphas[i] > alphas[i - 1])) {
      throw ParameterError("robin_dirichlet_limit: alphas must be increasing");
    }
  }
  const PiecewisePoly limit = dirichlet_solve(f);
  std::vector<double> distances;
  distances.reserve(alphas.size());
  for (double a : alphas) {
    distances.push_back(sup_distance(robin_solve(f, RobinParam(a)), limit));
  }
  return distances;
}

double fit_inverse_rate(const std::vector<double>& alphas,
                        const std::vector<double>& distances) {
  if (alphas.size() != distances.size() || alphas.empty()) {
    throw ParameterError("fit_inverse_rate: need matching, non-empty sequences");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    num += distances[i] / alphas[i];
    den += 1.0 / (alphas[i] * alphas[i]);
  }
  return num / den;
}

nlohmann::json to_json(const ComparisonReport& r) {
  nlohmann::json j;
  j["theorem"] = to_string(r.theorem);
  if (r.alpha) j["alpha"] = *r.alpha;
  j["star_margin"] = r.star_margin;
  nlohmann::json lp = nlohmann::json::object();
  for (const auto& m : r.lp_margins) lp[pexp_label(m.pexp)] = m.margin;
  j["lp_margins"] = lp;
  if (r.extrema_margins) {
    j["extrema_margins"] = {{"max", r.extrema_margins->max},
                            {"min", r.extrema_margins->min},
                            {"osc", r.extrema_margins->osc}};
  }
  j["convex_margin"] = r.convex.min_margin;
  j["convex_worst"] = r.convex.worst;
  if (r.pointwise_margin) j["pointwise_margin"] = *r.pointwise_margin;
  j["tolerances"] = {{"star", r.tolerances.star},
                     {"pointwise", r.tolerances.pointwise},
                     {"convex", r.tolerances.convex},
                     {"lp", r.tolerances.lp},
                     {"extrema", r.tolerances.extrema}};
  j["pass"] = r.pass;
  return j;
}

AuditSummary run_audit(Theorem theorem, std::size_t count, std::uint64_t seed,
                       const Tolerances& tol) {
  const Interval domain = theorem == Theorem::Neumann ? Interval(0.0, kPi) : rod_domain();
  std::vector<std::optional<AuditRecord>> slots(count);
  parallel_for(count, [&](std::size_t i) {
    auto rng = instance_rng(seed, i);
    switch (theorem) {
      case Theorem::Robin: {
        StepFunction f = random_nonnegative_step(rng, domain);
        const RobinParam alpha(random_alpha(rng));
        slots[i] = AuditRecord{i, seed, f, robin_compare(f, alpha, tol)};
        break;
      }
      case Theorem::Dirichlet:
      case Theorem::DirichletPointwise: {
        StepFunction f = random_nonnegative_step(rng, domain);
        slots[i] = AuditRecord{i, seed, f, dirichlet_compare(f, true, tol)};
        break;
      }
      case Theorem::Neumann: {
        StepFunction f = random_zero_mean_step(rng, domain);
        slots[i] = AuditRecord{i, seed, f, neumann_compare(f, tol)};
        break;
      }
    }
  });

  AuditSummary s;
  s.theorem = theorem == Theorem::Dirichlet ? Theorem::DirichletPointwise : theorem;
  s.seed = seed;
  s.records.reserve(count);
  for (auto& slot : slots) {
    const auto& rep = slot->report;
    if (rep.pass) ++s.passed;
    s.worst_star_margin = std::min(s.worst_star_margin, rep.star_margin);
    for (const auto& m : rep.lp_margins) s.worst_lp_margin = std::min(s.worst_lp_margin, m.margin);
    s.records.push_back(std::move(*slot));
  }
  return s;
}

nlohmann::json to_json(const AuditRecord& r) {
  nlohmann::json j = to_json(r.report);
  j["seed"] = r.seed;
  j["index"] = r.index;
  j["source"] = to_json(r.source);
  return j;
}

nlohmann::json to_json(const AuditSummary& s) {
  nlohmann::json j;
  j["summary"] = to_string(s.theorem);
  j["seed"] = s.seed;
  j["count"] = s.records.size();
  j["passed"] = s.passed;
  j["worst_star_margin"] = s.records.empty() ? 0.0 : s.worst_star_margin;
  j["worst_lp_margin"] = s.records.empty() ? 0.0 : s.worst_lp_margin;
  j["pass"] = s.pass();
  return j;
}

}  // namespace rodsym
