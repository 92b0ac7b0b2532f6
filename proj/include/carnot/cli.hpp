#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace carnot {

// Runs one CLI command (argv without the program name). Writes the report to
// out and diagnostics to err. Exit codes: 0 success, 1 validation or parse
// failure, 2 computation cap reached without a definitive answer, 3 internal
// error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace carnot
