#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace augview::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;

// Entry point shared by the executable and the tests. `args` excludes the
// program name. `serve` runs until `stop` becomes true.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::atomic<bool>& stop);

}  // namespace augview::cli
