#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDegenerate = 3,
};

/// Runs one command line (without the program name). Results go to files;
/// `out` receives short summaries and `err` diagnostics and progress.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dmap::cli
