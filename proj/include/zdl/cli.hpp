#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zdl {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParameter = 2,
  kExitIncompleteScan = 3,
  kExitInput = 4,
  kExitUnmatched = 5,
  kExitKsExceeded = 6,
};

// `args` excludes the program name: {"sweep", "--input", "z.txt", ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zdl
