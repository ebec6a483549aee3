#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loccx::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kIo = 3,
  kVerificationFailed = 4,
};

/// Environment variable capping the number of grid points the oracle may visit.
inline constexpr const char* kBudgetEnv = "LOCCXFORM_BUDGET";

/// Entry point of the `loccxform` tool. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace loccx::cli
