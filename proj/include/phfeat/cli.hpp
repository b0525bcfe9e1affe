#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phfeat::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kUsage = 2, kDataError = 3, kOracleMismatch = 4 };

// Runs `phfeat <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phfeat::cli
