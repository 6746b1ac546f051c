#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bcov {

// Runs the command-line interface on `args` (without the program name).
// Returns 0 on success, 1 on invalid input or failed validation, 2 when a
// census budget ran out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcov
