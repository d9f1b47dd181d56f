// Command-line front end, callable in-process for tests.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcplus::cli {

enum ExitCode : int {
  kOk = 0,
  kUndefined = 1,
  kInvalid = 2,     // validation or consistency diagnostics
  kParseError = 3,  // domain file or step syntax
  kUsage = 4,       // bad arguments, unreadable file, state-space cap
};

/// Default cap on the number of candidate states, overridden by the
/// PCPLUS_MAX_STATES environment variable.
inline constexpr unsigned long long kDefaultMaxStates = 1'000'000;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcplus::cli
