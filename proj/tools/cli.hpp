#pragma once

#include <string>
#include <vector>

namespace starcong::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefused = 1;
inline constexpr int kExitUsage = 2;

struct Result {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

/// Runs one command line; `args` excludes the program name.
Result run(const std::vector<std::string>& args);

}  // namespace starcong::cli
