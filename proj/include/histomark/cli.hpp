#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace histomark {

/// Process exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitCapacity = 2,
    kExitSelfCheck = 3,
    kExitNotDetected = 4,
    kExitSidecarVersion = 5,
    kExitBadAttack = 6,
};

/// Runs one command line (args[0] is the program name). JSON goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace histomark
