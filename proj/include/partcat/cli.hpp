#pragma once

#include <string>
#include <vector>

namespace partcat {

// Runs one CLI invocation. Returns the process exit code: 0 success,
// 1 verification failure, 2 usage error, 3 resource budget exceeded.
int run_cli(const std::vector<std::string>& args);

}  // namespace partcat
