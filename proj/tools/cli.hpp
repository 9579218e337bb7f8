#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moelab::cli {

/// Exit codes: 0 pass/accept, 1 fail/reject, 2 usage error, 3 budget or
/// resource exhaustion.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moelab::cli
