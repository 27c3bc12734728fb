#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iqcl::cli {

enum ExitCode { kOk = 0, kRejected = 1, kUsage = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iqcl::cli
