#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfwp::cli {

// Exit codes of every subcommand.
inline constexpr int kSuccess = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kInternalLimit = 3;

/// Runs one command line (args excludes the program name) and returns its exit
/// code. Human-readable output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfwp::cli
