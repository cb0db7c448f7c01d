#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ordertop::cli {

enum ExitCode : int { kOk = 0, kCertificateFailed = 1, kUsage = 2 };

/// Runs one command line. args[0] is the program name. Reports go to `out`
/// (or to the file named by --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordertop::cli
