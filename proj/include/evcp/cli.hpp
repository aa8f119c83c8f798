#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evcp::cli {

/// Entry point shared by the `evcp` executable and the tests. `args` excludes
/// the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evcp::cli
