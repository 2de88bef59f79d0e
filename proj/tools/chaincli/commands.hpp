#pragma once

#include <string>
#include <vector>

namespace chaincli {

// Exit codes: 0 success, 1 invalid flags, 2 numerical failure.
int run(const std::vector<std::string>& args);

}  // namespace chaincli
