#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace periodica::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kModelError = 3, kUsageError = 64 };

/// Runs the tool on `args` (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace periodica::cli
