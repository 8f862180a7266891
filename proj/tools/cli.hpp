#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mdlcorr::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kDataError = 2,
  kNumericFailure = 3,
};

/// Runs the command line `args` (without the program name). Tables and JSON
/// go to the output directory; the one-line summary goes to `out`, messages
/// to `err`. Files written before a failure are removed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdlcorr::cli
