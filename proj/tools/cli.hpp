#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hrg {

// Runs one subcommand. args excludes the program name. Returns the exit code:
// 0 all checks pass, 1 a mathematical condition failed, 2 input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hrg
