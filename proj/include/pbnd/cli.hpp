#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbnd::cli {

/// Exit codes of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;       // bad flags, unreadable files, malformed input
inline constexpr int kInfeasible = 2;  // no design meets the budget
inline constexpr int kUnsupported = 3;  // instance shape outside every solver's domain

/// Runs one command (`args` excludes the program name). Results go to `out`
/// unless --out is given; diagnostics always go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace pbnd::cli
