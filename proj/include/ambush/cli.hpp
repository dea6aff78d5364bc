#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ambush::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitSolver = 3;

// Runs the command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ambush::cli
