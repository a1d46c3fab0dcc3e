#pragma once

// Command-line front end. Exit codes: 0 affirmative or valid, 1 negative or invalid,
// 2 unknown, 64 usage error, 65 malformed input, 70 internal inconsistency.

#include <iosfwd>
#include <string>
#include <vector>

namespace wh::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitInternal = 70;

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wh::cli
