#pragma once

#include <string>
#include <vector>

namespace blc::cli {

// Exit codes beyond the 0/1/2 verdict protocol.
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInput = 65;
inline constexpr int kExitCap = 69;

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one command. `args` excludes the program name.
CliResult run(const std::vector<std::string>& args);

}  // namespace blc::cli
