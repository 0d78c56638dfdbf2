#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fwred {

enum ExitCode { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitInternal = 3 };

/// Command-line entry point: reduce, verify, numcheck and references.
/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fwred
