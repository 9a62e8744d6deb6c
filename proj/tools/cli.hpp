#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcns::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by the binary and the tests. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcns::cli
