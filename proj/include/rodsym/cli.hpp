#pragma once

// Command dispatch behind the `rodsym` executable. Argument parsing lives in
// tools/rodsym.cpp; everything here is testable with in-memory streams.
//
// Exit codes: 0 success, 1 a mathematical check failed (the failing instance
// is written to the output), 2 bad input or I/O failure.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rodsym {

enum class Command {
  Solve,
  Rearrange,
  Star,
  CheckHardyLittlewood,
  CheckRieszSobolev,
  CheckBaernstein,
  Compare,
  Audit,
  GapScan,
  GapCrit,
  GapSearch,
  Example,
};

enum class OutputFormat { Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

struct RunConfig {
  Command command = Command::Example;
  std::vector<std::string> input_paths;
  // solve: robin:<alpha> | neumann | dirichlet; compare and audit: robin | neumann | dirichlet
  std::string bc;
  std::optional<double> alpha;
  std::vector<double> alpha_grid;  // gap crit
  std::uint64_t seed = 0;
  std::size_t count = 500;  // audit and corpus checks
  std::size_t grid = 0;  // 0 selects the command default
  std::size_t cells = 16;
  std::optional<double> measure;  // gap search; defaults to pi
  // rearrange: sym | dec; star: exact | sampled
  std::string variant;
  std::string out_path;  // empty writes to the output stream
  std::optional<OutputFormat> format;  // default from the out_path extension
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rodsym
