#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperwalk::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a:b:step" (inclusive) or a single number
std::vector<double> parse_grid(const std::string& spec);

}  // namespace hyperwalk::cli
