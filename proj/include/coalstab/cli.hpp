#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coalstab {

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitValidation = 2 };

/// Runs one CLI invocation. args excludes the program name. Results go to
/// `out` (or the --output file); a single "error: ..." line goes to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coalstab
