#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sckb::cli {

enum ExitCode : int {
  kTrue = 0,
  kFalse = 1,
  kParseError = 2,
  kOracleMismatch = 3,
  kBudget = 4,
  kPartialBatch = 5,
};

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sckb::cli
