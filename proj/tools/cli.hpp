#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace volrep::cli {

enum ExitCode : int
{
  kOk            = 0,
  kUsageError    = 1,
  kInvalidConfig = 2,
  kNoConvergence = 3,
  kOutputError   = 4,
};

/// Entry point shared by the volrep binary and the CLI tests. args excludes argv[0].
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

}  // namespace volrep::cli
