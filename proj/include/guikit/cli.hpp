#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace guikit {

/// Runs the command line `args` (args[0] is the program name). Returns the
/// process exit status: 0 on success, 1 for data errors or validation
/// findings, 2 for usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace guikit
