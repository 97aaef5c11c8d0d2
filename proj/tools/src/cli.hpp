#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primform::cli {

/// Exit codes: 0 success, 1 a check or verification failed, 2 bad input or caps.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primform::cli
