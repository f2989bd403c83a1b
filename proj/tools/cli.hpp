#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acbls::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,  // check: invalid schedule; unroll: empty language
  kUsage = 2,   // bad flags, unreadable or malformed input
  kLimit = 3,   // solve: stopped by an iteration or time limit
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acbls::cli
