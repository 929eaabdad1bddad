#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace snc::cli {

enum ExitCode : int { ok = 0, negative = 1, input_error = 2 };

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snc::cli
