#pragma once

#include <string>
#include <vector>

namespace simnoise::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kIoFailure = 2,
  kDegenerateWarning = 3,
};

// Entry point of the simnoise tool. args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace simnoise::cli
