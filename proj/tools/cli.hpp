#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace walkwait::cli {

// Full command-line surface, factored out of main() so tests can drive it
// with captured streams. `args` excludes the program name. Returns the
// process exit code: 0 success (including dominance reports), 1 parse or
// validation failure, 2 violated model assumption, 3 oracle disagreement
// in `compare`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace walkwait::cli
