#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace r2r::cli {

inline constexpr int kExitStable = 0;
inline constexpr int kExitUnstable = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMarginal = 3;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace r2r::cli
