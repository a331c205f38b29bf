#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flowsample {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,  // bad input, flags or files
  kExitRefused = 3,     // enumeration cap or iteration budget
};

int run_cli(int argc, char** argv);

/// Same as run_cli with an explicit argument list (without the program name)
/// and streams, for tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flowsample
