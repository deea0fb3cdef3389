// cli.hpp: the stirlingq command line, callable in-process.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stirlingq::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumeric = 3 };

// args excludes the program name. CSV goes to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stirlingq::cli
