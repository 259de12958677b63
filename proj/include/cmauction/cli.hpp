#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmauction::cli {

// Exit codes besides the per-error-kind codes (see ErrorKind).
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerdictFailed = 3;

// Environment variable overriding the default --tol.
inline constexpr const char* kTolEnv = "CMAUCTION_TOL";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cmauction::cli
