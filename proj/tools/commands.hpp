#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace platoon_lab::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kUnstableBlocks = 3,
    kIdentityFailure = 4,
};

/// Runs `platoon-lab` with args (excluding the program name). Results go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace platoon_lab::cli
