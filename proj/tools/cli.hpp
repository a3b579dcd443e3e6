#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdtwist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. args[0] is the program name. Output goes to out,
/// diagnostics to err; the return value is the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdtwist::cli
