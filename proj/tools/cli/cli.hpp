#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bzwave::cli {

/// Exit codes of the bzwave command.
enum Exit : int {
    ok = 0,
    computation = 1,
    usage = 2,
    not_converged = 3,
    mismatch = 4,
};

/// Runs one command; args excludes the program name. All output goes to the
/// given streams or to files named by --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bzwave::cli
