// Command implementations behind the hcircle executable. Each command writes
// its table (or SVG) to the given stream and reports an exit code:
// 0 success, 1 an identity failed, 2 bad arguments.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hcircle/output.hpp"
#include "hcircle/quadfield.hpp"

namespace hcircle {

struct CommandResult {
  int exit_code = 0;
  u64 rows_emitted = 0;
};

// Flag bounds.
inline constexpr double kSurveyMaxX = 1e7;
inline constexpr double kCountMaxX = 1e6;
inline constexpr double kBnumbersMaxX = 1e7;

// "all" or a single value from kAllQ. Throws UsageError otherwise.
std::vector<int> parse_q_selector(const std::string& s);

struct CommandArgs {
  std::vector<int> qs;
  std::vector<i64> two_n;
  std::optional<i64> max_two_n;
  std::optional<double> x;
  std::optional<i64> h;
  std::optional<double> y;
  std::optional<double> z;
  std::optional<double> s;
  std::optional<int> k;
  // Unset means csv for tables and svg for plot.
  std::optional<Format> format;
  unsigned threads = 0;
  std::string inject_fault;
};

// Each throws UsageError for out-of-range or missing flags; run_command maps
// that to exit code 2.
CommandResult cmd_verify(const CommandArgs& args, std::ostream& os);
CommandResult cmd_circle(const CommandArgs& args, std::ostream& os);
CommandResult cmd_survey(const CommandArgs& args, std::ostream& os);
CommandResult cmd_count(const CommandArgs& args, std::ostream& os);
CommandResult cmd_bnumbers(const CommandArgs& args, std::ostream& os);
CommandResult cmd_plot(const CommandArgs& args, std::ostream& os);

// Dispatch by name; usage problems are written to err and give exit code 2.
CommandResult run_command(const std::string& name, const CommandArgs& args, std::ostream& os, std::ostream& err);

}  // namespace hcircle
