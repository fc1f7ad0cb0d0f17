#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sadiag::cli {

enum ExitCode : int { ok = 0, validation_error = 2, infeasible = 3, numeric_abort = 4 };

/// Runs `sadiag <args...>` writing reports to `out` and diagnostics to `err`.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sadiag::cli
