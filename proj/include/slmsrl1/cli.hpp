#pragma once

#include <iosfwd>

namespace slmsrl1 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitSelectionInfeasible = 3;

/// Entry point of the `slms_rl1` tool (subcommands: run, sweep, compare,
/// selftest). Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slmsrl1
