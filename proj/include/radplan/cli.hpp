#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radplan::cli {

enum ExitCode : int {
    ok = 0,
    usage_error = 1,
    input_error = 2,
    no_feasible_design = 3,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses START:STEP:END into an inclusive grid. Throws std::invalid_argument.
std::vector<double> parse_grid(const std::string& text);

}  // namespace radplan::cli
