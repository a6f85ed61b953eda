#pragma once

#include <iosfwd>

namespace genfrac {

/// Exit codes shared by the subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,        // verify: some check failed
  kExitBadArguments = 2,   // invalid flags or parameters
  kExitInconclusive = 3,   // eval: no convergence; verify: too many inconclusive
};

/// Entry point of the genfrac tool (subcommands eval, reduce, oracle, verify).
/// Writes to the given streams instead of std::cout / std::cerr so tests can
/// run it in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace genfrac
