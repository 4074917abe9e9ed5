#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tatespace {

/// Runs one CLI invocation (args excludes the program name). Returns the
/// exit code: 0 success, 1 failed check, 2 malformed input or usage.
/// Input "-" or a missing path argument reads `in`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tatespace
