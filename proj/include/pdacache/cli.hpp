#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdacache {

// Runs one CLI invocation. `args` excludes the program name. Returns the
// process exit status: 0 success, 1 domain error (invalid array, bad
// parameters, I/O), 2 usage error, 3 simulation completed but some user
// failed to decode.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace pdacache
