#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riskdual::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUsage = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns the process exit code:
/// 0 success, 2 I/O or parse failure, 3 invalid arguments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riskdual::cli
