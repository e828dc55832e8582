#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torusopt::cli {

/// Exit codes: 0 ok, 2 invalid complex, 3 parse error, 4 degenerate
/// weights, 5 oracle failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitDegenerate = 4;
inline constexpr int kExitOracle = 5;

/// Run the command line given argv-style arguments (without the program
/// name). All output goes to the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torusopt::cli
