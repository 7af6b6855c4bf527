#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hfcx {

// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitInput = 2 };

// Runs the tool on arguments without the program name. Reports go to `out`,
// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hfcx
