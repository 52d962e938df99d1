#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polycover {

// Runs one CLI invocation. `args` excludes the program name. Exit codes:
// 0 success, 2 usage or malformed input, 3 guard refusal, 4 verification
// disagreement, 1 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polycover
