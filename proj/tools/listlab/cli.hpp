#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace listlab::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // a verification performed by the command failed
  kUsage = 2,        // bad flags, config or input data
  kBudget = 3,       // an oracle or exploration budget was exceeded
  kIo = 4,           // a file could not be read or written
  kInternal = 5,
};

// Runs the command line `args` (without the program name). Output goes to
// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace listlab::cli
