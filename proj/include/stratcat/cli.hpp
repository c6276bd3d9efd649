#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stratcat {

// Command-line driver. Prints one JSON object per check line, sorted by
// (suite, case). Returns 0 when every line passes, 1 when any line fails,
// 2 on input or usage problems, 3 on internal postcondition failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stratcat
