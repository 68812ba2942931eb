#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace mfsr::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kContract = 3,
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out`, diagnostics and usage text to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mfsr::cli
