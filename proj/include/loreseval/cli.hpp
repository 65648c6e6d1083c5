#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace loreseval::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kFileError = 2,      // missing/unreadable file, bad encoding, blank line
  kAlignment = 3,      // line count mismatch between aligned files
  kComparison = 4,     // compare: baseline missing/ambiguous, < 2 entries
  kInvalidInput = 5,   // schema/validation errors, annotator count, bad config
};

// Runs one command line (argv[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loreseval::cli
