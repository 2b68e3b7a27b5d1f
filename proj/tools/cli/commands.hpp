#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperforge::cli {

// Exit status for command-line usage errors (unknown flags, missing values).
inline constexpr int kUsageExit = 64;

// Runs one `hyperforge` invocation. args excludes the program name.
// JSON results go to out, JSON error objects to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperforge::cli
