// rodsym: command-line front end. Parses arguments into a RunConfig and
// hands it to rodsym::run.

#include <iostream>
#include <map>
#include <string>
#include <tuple>

#include <CLI11.hpp>

#include "rodsym/cli.hpp"

namespace {

using rodsym::Command;
using rodsym::OutputFormat;
using rodsym::RunConfig;

void add_output(CLI::App* app, RunConfig& cfg, std::string& format) {
  app->add_option("-o,--out", cfg.out_path, "Output file (default: stdout)");
  app->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rearrangement comparison principles for -u'' = f on a rod"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format;
  std::string kind;

  auto* solve = app.add_subcommand("solve", "Solve -u'' = f under a boundary condition");
  solve->add_option("--bc", cfg.bc, "robin:<alpha> | neumann | dirichlet")->required();
  solve->add_option("-i,--in", cfg.input_paths, "Source step function (JSON)")
      ->required()->expected(1);
  solve->add_option("--grid", cfg.grid, "CSV sample count (default 1001)");
  add_output(solve, cfg, format);

  auto* rearrange = app.add_subcommand("rearrange", "Rearrange a step function");
  rearrange->add_option("-i,--in", cfg.input_paths, "Step function (JSON)")
      ->required()->expected(1);
  rearrange->add_option("--mode", cfg.variant, "sym (f#, default) | dec (f*)")
      ->check(CLI::IsMember({"sym", "dec"}));
  add_output(rearrange, cfg, format);

  auto* star = app.add_subcommand("star", "Star function of a step function or piecewise quadratic");
  star->add_option("-i,--in", cfg.input_paths, "Step function or piecewise quadratic (JSON)")
      ->required()->expected(1);
  star->add_option("--method", cfg.variant, "exact | sampled (piecewise quadratics)")
      ->check(CLI::IsMember({"exact", "sampled"}));
  star->add_option("--grid", cfg.grid, "Node intervals or sample count");
  add_output(star, cfg, format);

  auto* check = app.add_subcommand("check", "Rearrangement inequality checks");
  check->require_subcommand(1);
  std::map<CLI::App*, Command> check_commands;
  for (auto [name, help, command, arity] :
       {std::tuple{"hl", "Hardy-Littlewood: f g", Command::CheckHardyLittlewood, 2},
        std::tuple{"rs", "Riesz-Sobolev: f g h", Command::CheckRieszSobolev, 3},
        std::tuple{"baernstein", "Periodic Riesz-Sobolev: f g h", Command::CheckBaernstein, 3}}) {
    auto* sub = check->add_subcommand(name, help);
    auto* files = sub->add_option("-i,--in", cfg.input_paths,
                                  "Step functions (JSON); omit for a random corpus")
                      ->expected(arity);
    sub->add_option("--count", cfg.count, "Corpus size")->excludes(files)->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Corpus seed")->excludes(files)->capture_default_str();
    sub->add_option("--grid", cfg.grid, "Outer quadrature cells (default 4096)");
    add_output(sub, cfg, format);
    check_commands[sub] = command;
  }

  auto* compare = app.add_subcommand("compare", "Compare solutions for f and its rearrangement");
  compare->add_option("kind", cfg.bc, "robin | neumann | dirichlet")
      ->required()->check(CLI::IsMember({"robin", "neumann", "dirichlet"}));
  compare->add_option("-i,--in", cfg.input_paths, "Source step function (JSON)")
      ->required()->expected(1);
  compare->add_option("--alpha", cfg.alpha, "Robin parameter");
  add_output(compare, cfg, format);

  auto* audit = app.add_subcommand("audit", "Comparison audit over a random corpus");
  audit->add_option("kind", cfg.bc, "robin | neumann | dirichlet")
      ->required()->check(CLI::IsMember({"robin", "neumann", "dirichlet"}));
  audit->add_option("--count", cfg.count, "Corpus size")->capture_default_str();
  audit->add_option("--seed", cfg.seed, "Corpus seed")->capture_default_str();
  add_output(audit, cfg, format);

  auto* gap = app.add_subcommand("gap", "Temperature gap for interval sources");
  gap->require_subcommand(1);
  auto* scan = gap->add_subcommand("scan", "Gap over source centers b (CSV: b, numeric, formula)");
  scan->add_option("--alpha", cfg.alpha, "Robin parameter")->required();
  scan->add_option("--grid", cfg.grid, "Number of b values (default 2001)");
  add_output(scan, cfg, format);
  auto* crit = gap->add_subcommand("crit", "Interior maximizer b_crit (CSV: alpha, b_crit)");
  crit->add_option("--alpha-grid", cfg.alpha_grid, "Comma-separated alphas")->delimiter(',');
  crit->add_option("--grid", cfg.grid, "Log-spaced alphas on [0.05, 20] when no list is given");
  add_output(crit, cfg, format);
  auto* search = gap->add_subcommand("search", "Search over unions of grid cells");
  search->add_option("--alpha", cfg.alpha, "Robin parameter")->required();
  search->add_option("--cells", cfg.cells, "Number of cells (even, >= 8)")->capture_default_str();
  search->add_option("--measure", cfg.measure, "Source measure (default pi)");
  search->add_option("--seed", cfg.seed, "Seed for random restarts")->capture_default_str();
  add_output(search, cfg, format);

  auto* example = app.add_subcommand("example", "Closed-form half-rod example and its checks");
  example->add_option("--alpha", cfg.alpha, "Robin parameter (default 1)");
  add_output(example, cfg, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rodsym::kExitBadInput;
  }

  if (solve->parsed()) cfg.command = Command::Solve;
  if (rearrange->parsed()) cfg.command = Command::Rearrange;
  if (star->parsed()) cfg.command = Command::Star;
  for (const auto& [sub, command] : check_commands) {
    if (sub->parsed()) cfg.command = command;
  }
  if (compare->parsed()) cfg.command = Command::Compare;
  if (audit->parsed()) cfg.command = Command::Audit;
  if (scan->parsed()) cfg.command = Command::GapScan;
  if (crit->parsed()) cfg.command = Command::GapCrit;
  if (search->parsed()) cfg.command = Command::GapSearch;
  if (example->parsed()) cfg.command = Command::Example;
  if (!format.empty()) cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

  return rodsym::run(cfg, std::cout, std::cerr);
}
