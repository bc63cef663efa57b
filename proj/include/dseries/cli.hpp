#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dseries::cli {

enum ExitCode : int
{
  kOk = 0,
  kInvalidInput = 2,
  kResourceCap = 3,
  kUsage = 64,
};

/// Runs one command line (args[0] is the program name). Results go to the
/// --output file or `out`; diagnostics go to `err`.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace dseries::cli
