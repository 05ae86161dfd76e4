#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcgrid {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  exit_ok = 0,
  exit_violation = 1,  ///< property violation or FC/naive mismatch
  exit_usage = 2,      ///< bad flags, IO or parse errors
};

/// Runs the fcgrid command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcgrid
