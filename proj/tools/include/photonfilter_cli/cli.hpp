#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace photonfilter::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs `photonfilter <me|trajectory|ensemble|verify> [flags]`. `args` excludes
/// the program name. Series go to --out when given (summary to `out`),
/// otherwise to `out` with the summary on `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace photonfilter::cli
