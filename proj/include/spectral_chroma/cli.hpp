#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spectral_chroma {

// Exit statuses of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_input = 2, exit_solver = 3, exit_chain = 4 };

// Entry point behind the spectral-chroma executable. args excludes the program
// name. Reports go to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Expands "a..b" ranges; a plain integer is a one-element range.
std::vector<long long> expand_range(const std::string& token);

}  // namespace spectral_chroma
