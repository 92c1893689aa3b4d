#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ricochet::cli {

// Exit codes.
inline constexpr int kOk = 0;          // success, solvable, verified
inline constexpr int kNo = 1;          // unsolvable, not generated, violation
inline constexpr int kUsage = 2;       // bad flags, unreadable or malformed input
inline constexpr int kUndecided = 3;   // limits hit, inconclusive

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ricochet::cli
