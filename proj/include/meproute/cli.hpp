#pragma once

#include <string>
#include <vector>

namespace meproute::cli {

/// Runs one CLI invocation (solve / oracle / generate / compare).
/// Exit status: 0 success, 1 usage error, 2 numerical divergence,
/// 3 oracle size limit.
int run(const std::vector<std::string>& args);

}  // namespace meproute::cli
