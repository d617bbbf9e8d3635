#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adtarget::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSolverFailure = 2 };

/// Runs one command line. `args[0]` is the program name. Documents go to `out`
/// (or to the --out file), diagnostics to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adtarget::cli
