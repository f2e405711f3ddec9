#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace allen::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success or consistent, 1 inconsistent / no scenario / verification
/// mismatch, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace allen::cli
