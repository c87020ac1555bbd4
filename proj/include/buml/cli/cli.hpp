#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace buml::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kModelFailure = 1;  // validation, conformance, constraint or FSM failure
inline constexpr int kUsage = 2;         // bad arguments, unreadable files, syntax errors in inputs

/// Runs the command line in-process. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace buml::cli
