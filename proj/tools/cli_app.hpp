#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scc::cli {

/// Runs the command line given argv-style arguments (without the program
/// name).  Output goes to `out` (and to --out files); diagnostics to `err`.
/// Returns the process exit code: 0 ok, 2 invalid input, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scc::cli
