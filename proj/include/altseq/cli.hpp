// Command-line front end. Standard output carries only the machine-readable
// payload; progress and diagnostics go to standard error.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace altseq::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kCapacityError = 3,
};

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

const char* build_id();

}  // namespace altseq::cli
