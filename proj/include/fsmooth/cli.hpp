#pragma once

#include <string>
#include <vector>

namespace fsmooth::cli {

// Runs one CLI invocation (args exclude the program name). Returns the
// process exit status: 0 success, 1 domain/format error, 2 I/O error.
int run(const std::vector<std::string>& args);

}  // namespace fsmooth::cli
