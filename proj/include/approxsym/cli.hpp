#pragma once

#include <iosfwd>

namespace approxsym {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `approxsym` tool (subcommands gen, solve, experiment,
/// brain, compare). Summaries go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace approxsym
