#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ddm {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumeric = 2 };

/// Entry point shared by the `ddm` executable and the tests. `args` excludes
/// the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ddm
