#pragma once

#include <iosfwd>

namespace rmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitIo = 4;

/// Parses argv, runs the chosen subcommand and writes its report to `out`
/// (or to --output). Diagnostics go to `err`. Returns the process exit code.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rmc::cli
