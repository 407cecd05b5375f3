#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace halfdm::cli {

// Exit codes: 0 success, 1 analysis-negative verdict under --strict, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInputError = 2;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halfdm::cli
