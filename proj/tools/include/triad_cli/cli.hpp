#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace triad::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kNumerical = 2 };

/// Runs one command line. args excludes the program name; `in` backs the
/// "-" file argument.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace triad::cli
