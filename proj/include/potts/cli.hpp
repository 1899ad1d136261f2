#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace potts::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

/// Runs one command line (without the program name). The text summary goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

/// Exit code for an exception escaping a command: 2 for bad arguments, 3 for
/// domain and numerical failures. Anything else is rethrown.
int exit_code_for(std::exception_ptr error, std::ostream& err);

} // namespace potts::cli
