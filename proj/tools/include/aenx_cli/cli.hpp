#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aenx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `aenx <args...>` (args excludes the program name).
/// Normal output goes to `out` unless --out names a file; diagnostics go
/// to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aenx::cli
