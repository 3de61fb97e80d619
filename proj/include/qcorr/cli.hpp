#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcorr {

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitInvalid = 2, kExitBudget = 3 };

/// Entry point of the qcorr command line; argv[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcorr
