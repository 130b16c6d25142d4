#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ontoforge::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kTestFailure = 1;
inline constexpr int kCompileError = 2;
inline constexpr int kIoError = 3;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ontoforge::cli
