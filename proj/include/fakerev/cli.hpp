#pragma once

#include <string>
#include <vector>

namespace fakerev::cli {

/// Exit codes besides 0.
inline constexpr int kExitInvalid = 1;       // validation or invariant failure
inline constexpr int kExitMissingInput = 2;  // an input file does not exist
inline constexpr int kExitUsage = 64;        // rejected command line

int run(int argc, char** argv);
/// args[0] is the program name.
int run(const std::vector<std::string>& args);

}  // namespace fakerev::cli
