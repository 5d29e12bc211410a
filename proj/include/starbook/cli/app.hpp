#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace starbook::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailed = 1,  // verification failure, UNSAT, construction failure
    kExitUsage = 2,
    kExitAborted = 3,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace starbook::cli
