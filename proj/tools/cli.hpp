#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace daub::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCapability = 3;
inline constexpr int kNonConvergence = 4;

// Runs the command line `args` (without the program name). Normal output
// goes to `out`, diagnostics and summaries (when the CSV is on `out`) to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace daub::cli
