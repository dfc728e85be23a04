#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amalg {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;  // numeric contract violated or verdict failed
inline constexpr int kExitUsage = 2;     // bad flags

/// Runs one command line (without the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amalg
