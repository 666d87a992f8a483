#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lsv::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kNumerical = 3,
};

/// Runs one command line (args[0] is the program name) and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsv::cli
