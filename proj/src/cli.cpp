#include "rodsym/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "rodsym/compare.hpp"
#include "rodsym/corpus.hpp"
#include "rodsym/errors.hpp"
#include "rodsym/gap.hpp"
#include "rodsym/inequalities.hpp"
#include "rodsym/json_io.hpp"
#include "rodsym/parallel.hpp"
#include "rodsym/rearrange.hpp"
#include "rodsym/solver.hpp"

namespace rodsym {

namespace {

using nlohmann::json;

constexpr std::size_t kDefaultSolveGrid = 1001;
constexpr double kGapAgreementTol = 1e-8;
constexpr double kExampleTol = 1e-10;

// Unreadable files, unwritable outputs, malformed documents.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  std::string text;
  bool checks_passed = true;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json load_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    const std::size_t line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    const std::size_t last_newline = text.rfind('\n', upto == 0 ? 0 : upto - 1);
    const std::size_t column =
        last_newline == std::string::npos || upto == 0 ? upto + 1 : upto - last_newline;
    throw InputError(fmt::format("{}:{}:{}: malformed JSON ({})", path, line, column, e.what()));
  }
}

StepFunction load_step(const std::string& path) {
  try {
    return step_function_from_json(load_json(path));
  } catch (const ParameterError& e) {
    throw ParameterError(fmt::format("{}: {}", path, e.what()));
  }
}

const std::string& input(const RunConfig& c, std::size_t i) {
  if (c.input_paths.size() <= i) {
    throw ParameterError(fmt::format("expected at least {} input file(s)", i + 1));
  }
  return c.input_paths[i];
}

OutputFormat format_for(const RunConfig& c, OutputFormat fallback) {
  if (c.format) return *c.format;
  const auto& p = c.out_path;
  if (p.size() >= 4 && p.compare(p.size() - 4, 4, ".csv") == 0) return OutputFormat::Csv;
  if (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0) return OutputFormat::Json;
  return fallback;
}

void require_json(const RunConfig& c, const char* command) {
  if (format_for(c, OutputFormat::Json) != OutputFormat::Json) {
    throw ParameterError(fmt::format("{} writes JSON only", command));
  }
}

std::string line(const json& j) { return j.dump() + "\n"; }

std::string csv_number(double x) { return fmt::format("{:.17g}", x); }

BoundaryCondition parse_bc(const std::string& spec) {
  if (spec == "neumann") return BoundaryCondition::neumann();
  if (spec == "dirichlet") return BoundaryCondition::dirichlet();
  const std::string prefix = "robin:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string value = spec.substr(prefix.size());
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw ParameterError(fmt::format("bad Robin parameter in '{}'", spec));
    }
    return BoundaryCondition::robin(RobinParam(alpha));
  }
  throw ParameterError(fmt::format("unknown boundary condition '{}'", spec));
}

Theorem parse_theorem(const std::string& name) {
  if (name == "robin") return Theorem::Robin;
  if (name == "neumann") return Theorem::Neumann;
  if (name == "dirichlet") return Theorem::DirichletPointwise;
  throw ParameterError(fmt::format("unknown comparison '{}' (robin|neumann|dirichlet)", name));
}

double require_alpha(const RunConfig& c) {
  if (!c.alpha) throw ParameterError("--alpha is required");
  return *c.alpha;
}

// ---------------------------------------------------------------------------

Outcome do_solve(const RunConfig& c) {
  const StepFunction f = load_step(input(c, 0));
  const PiecewisePoly u = solve(f, parse_bc(c.bc));
  if (format_for(c, OutputFormat::Json) == OutputFormat::Json) {
    return {line(to_json(u))};
  }
  std::string text = "x,u\n";
  for (double x : uniform_grid(u.domain(), c.grid ? c.grid : kDefaultSolveGrid)) {
    text += csv_number(x) + "," + csv_number(u(x)) + "\n";
  }
  return {text};
}

Outcome do_rearrange(const RunConfig& c) {
  require_json(c, "rearrange");
  const StepFunction f = load_step(input(c, 0));
  if (c.variant.empty() || c.variant == "sym") {
    return {line(to_json(symmetric_decreasing_rearrangement(f)))};
  }
  if (c.variant == "dec") return {line(to_json(decreasing_rearrangement(f)))};
  throw ParameterError(fmt::format("unknown rearrangement mode '{}' (dec|sym)", c.variant));
}

Outcome do_star(const RunConfig& c) {
  const json doc = load_json(input(c, 0));
  std::optional<StarCurve> curve;
  if (doc.is_object() && doc.contains("coeffs")) {
    StarMethod method = StarMethod::Exact;
    if (c.variant == "sampled") {
      method = StarMethod::Sampled;
    } else if (!c.variant.empty() && c.variant != "exact") {
      throw ParameterError(fmt::format("unknown star method '{}' (exact|sampled)", c.variant));
    }
    curve = star_function(piecewise_poly_from_json(doc), method, c.grid);
  } else {
    curve = star_function(step_function_from_json(doc));
  }
  if (format_for(c, OutputFormat::Csv) == OutputFormat::Json) {
    json j;
    j["length"] = curve->length();
    j["nodes"] = std::vector<double>(curve->nodes().begin(), curve->nodes().end());
    j["values"] = std::vector<double>(curve->values().begin(), curve->values().end());
    return {line(j)};
  }
  std::string text = "t,star\n";
  for (std::size_t i = 0; i < curve->nodes().size(); ++i) {
    text += csv_number(curve->nodes()[i]) + "," + csv_number(curve->values()[i]) + "\n";
  }
  return {text};
}

struct CheckSpec {
  std::string name;
  std::size_t arity;
};

CheckSpec check_spec(Command command) {
  switch (command) {
    case Command::CheckHardyLittlewood: return {"hardy_littlewood", 2};
    case Command::CheckRieszSobolev: return {"riesz_sobolev", 3};
    default: return {"baernstein", 3};
  }
}

InequalityResult run_check(Command command, const std::vector<StepFunction>& fs,
                           std::size_t n_grid) {
  switch (command) {
    case Command::CheckHardyLittlewood: return hardy_littlewood_check(fs[0], fs[1]);
    case Command::CheckRieszSobolev: return riesz_sobolev_check(fs[0], fs[1], fs[2], n_grid);
    default: return baernstein_check(fs[0], fs[1], fs[2], n_grid);
  }
}

json check_json(const std::string& name, const InequalityResult& r,
                const std::vector<StepFunction>& fs) {
  json j{{"check", name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin()},
         {"slack", r.slack}, {"pass", r.pass()}};
  if (!r.pass()) {
    json inputs = json::array();
    for (const auto& f : fs) inputs.push_back(to_json(f));
    j["inputs"] = inputs;
  }
  return j;
}

// With input files, checks them; otherwise checks `count` random nonnegative
// tuples on [-pi, pi] drawn from `seed`.
Outcome do_check(const RunConfig& c) {
  require_json(c, "check");
  const CheckSpec spec = check_spec(c.command);
  const std::size_t n_grid = c.grid ? c.grid : kDefaultOuterGrid;
  if (!c.input_paths.empty()) {
    std::vector<StepFunction> fs;
    for (std::size_t i = 0; i < spec.arity; ++i) fs.push_back(load_step(input(c, i)));
    const InequalityResult r = run_check(c.command, fs, n_grid);
    return {line(check_json(spec.name, r, fs)), r.pass()};
  }

  std::vector<std::optional<json>> rows(c.count);
  std::vector<char> passed(c.count, 0);
  parallel_for(c.count, [&](std::size_t i) {
    auto rng = instance_rng(c.seed, i);
    std::vector<StepFunction> fs;
    for (std::size_t k = 0; k < spec.arity; ++k) {
      fs.push_back(random_nonnegative_step(rng, rod_domain()));
    }
    const InequalityResult r = run_check(c.command, fs, n_grid);
    json j = check_json(spec.name, r, fs);
    j["seed"] = c.seed;
    j["index"] = i;
    rows[i] = std::move(j);
    passed[i] = r.pass();
  });
  std::string text;
  for (const auto& row : rows) text += line(*row);
  const auto n_passed = static_cast<std::size_t>(std::count(passed.begin(), passed.end(), 1));
  text += line(json{{"summary", spec.name},
                    {"seed", c.seed},
                    {"count", c.count},
                    {"passed", n_passed},
                    {"pass", n_passed == c.count}});
  return {text, n_passed == c.count};
}

Outcome do_compare(const RunConfig& c) {
  require_json(c, "compare");
  const StepFunction f = load_step(input(c, 0));
  ComparisonReport r;
  switch (parse_theorem(c.bc)) {
    case Theorem::Robin: r = robin_compare(f, RobinParam(require_alpha(c))); break;
    case Theorem::Neumann: r = neumann_compare(f); break;
    default: r = dirichlet_compare(f); break;
  }
  json j = to_json(r);
  if (!r.pass) j["source"] = to_json(f);
  return {line(j), r.pass};
}

Outcome do_audit(const RunConfig& c) {
  require_json(c, "audit");
  const AuditSummary s = run_audit(parse_theorem(c.bc), c.count, c.seed);
  std::string text;
  for (const auto& rec : s.records) text += line(to_json(rec));
  text += line(to_json(s));
  return {text, s.pass()};
}

Outcome do_gap_scan(const RunConfig& c) {
  const RobinParam alpha(require_alpha(c));
  const GapScanResult r = gap_scan(alpha, c.grid ? c.grid : kDefaultGapGrid);
  const bool agree = r.max_discrepancy() <= kGapAgreementTol;
  if (format_for(c, OutputFormat::Csv) == OutputFormat::Json) {
    json j{{"alpha", r.alpha},
           {"b", r.b_values},
           {"gap_numeric", r.gaps_numeric},
           {"gap_formula", r.gaps_formula},
           {"argmax_numeric", r.argmax_numeric},
           {"b_crit", r.b_crit_formula ? json(*r.b_crit_formula) : json(nullptr)},
           {"max_discrepancy", r.max_discrepancy()}};
    return {line(j), agree};
  }
  std::string text = "b,gap_numeric,gap_formula\n";
  for (std::size_t i = 0; i < r.b_values.size(); ++i) {
    text += csv_number(r.b_values[i]) + "," + csv_number(r.gaps_numeric[i]) + "," +
            csv_number(r.gaps_formula[i]) + "\n";
  }
  return {text, agree};
}

Outcome do_gap_crit(const RunConfig& c) {
  std::vector<double> alphas = c.alpha_grid;
  if (alphas.empty()) {
    const std::size_t n = c.grid ? c.grid : 50;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
      alphas.push_back(0.05 * std::pow(400.0, s));
    }
  }
  if (format_for(c, OutputFormat::Csv) == OutputFormat::Json) {
    json rows = json::array();
    for (double a : alphas) {
      const auto b = b_crit(a);
      rows.push_back({{"alpha", a}, {"b_crit", b ? json(*b) : json(nullptr)}});
    }
    return {line(rows)};
  }
  std::string text = "alpha,b_crit\n";
  for (double a : alphas) {
    const auto b = b_crit(a);
    text += csv_number(a) + "," + (b ? csv_number(*b) : std::string()) + "\n";
  }
  return {text};
}

Outcome do_gap_search(const RunConfig& c) {
  require_json(c, "gap search");
  const RobinParam alpha(require_alpha(c));
  const double measure = c.measure.value_or(kPi);
  const ExtremalResult best = extremal_search(alpha, c.cells, measure, c.seed);
  const ExtremalResult interval = best_interval_candidate(alpha, c.cells, measure);
  json j{{"alpha", alpha.alpha()},
         {"n_cells", c.cells},
         {"measure", measure},
         {"cells", best.cells},
         {"gap", best.best_gap},
         {"exhaustive", best.exhaustive},
         {"evaluated", best.evaluated},
         {"interval_cells", interval.cells},
         {"interval_gap", interval.best_gap}};
  return {line(j)};
}

Outcome do_example(const RunConfig& c) {
  require_json(c, "example");
  const RobinParam alpha(c.alpha.value_or(1.0));
  const auto [u, v] = example_solutions(alpha);
  const double a = alpha.alpha();
  const double osc_u = extrema(u).osc();
  const double osc_v = extrema(v).osc();
  const double drop = u(-0.5 * kPi) - u(kPi);
  const double osc_v_closed = 3.0 * kPi * kPi / 8.0;
  const double drop_closed = kPi * kPi * (5.0 + 2.0 * a * kPi) / (8.0 * (1.0 + a * kPi));
  const bool ok = std::abs(osc_v - osc_v_closed) <= kExampleTol &&
                  std::abs(drop - drop_closed) <= kExampleTol;
  json j{{"alpha", a},
         {"c_alpha", alpha.c_alpha()},
         {"u", to_json(u)},
         {"v", to_json(v)},
         {"osc_u", osc_u},
         {"osc_v", osc_v},
         {"osc_v_closed_form", osc_v_closed},
         {"u_drop", drop},
         {"u_drop_closed_form", drop_closed},
         {"osc_u_exceeds_osc_v", osc_u > osc_v},
         {"pass", ok}};
  return {line(j), ok};
}

Outcome dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::Solve: return do_solve(c);
    case Command::Rearrange: return do_rearrange(c);
    case Command::Star: return do_star(c);
    case Command::CheckHardyLittlewood:
    case Command::CheckRieszSobolev:
    case Command::CheckBaernstein: return do_check(c);
    case Command::Compare: return do_compare(c);
    case Command::Audit: return do_audit(c);
    case Command::GapScan: return do_gap_scan(c);
    case Command::GapCrit: return do_gap_crit(c);
    case Command::GapSearch: return do_gap_search(c);
    case Command::Example: return do_example(c);
  }
  throw ParameterError("unknown command");
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file || !(file << text)) {
    throw InputError(fmt::format("cannot write '{}'", c.out_path));
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Outcome outcome = dispatch(config);
    emit(config, outcome.text, out);
    if (!outcome.checks_passed) {
      err << "check failed\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const CompatibilityError& e) {
    err << "error: incompatible Neumann data: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InternalError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {  // ParameterError, PreconditionError
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace rodsym
