#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kmod {

/// Exit codes of run_command.
enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_error = 2 };

/// Runs one kmod command (argv without the program name). The report goes to
/// `out`; diagnostics and timing go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kmod
