#pragma once

#include <ostream>

namespace kleingate::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitIoError = 3,
  kExitNumericError = 4,
};

/// Parses arguments and runs one subcommand. Never throws; failures become
/// exit codes with a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kleingate::cli
