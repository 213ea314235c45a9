#pragma once

namespace wocd::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,   // unexpected failure
  kUsage = 2,      // bad or missing flags
  kParse = 3,      // malformed input file or config
  kInvalid = 4,    // inconsistent dimensions or out-of-range values
  kIo = 5,         // unreadable or unwritable path
  kNumerical = 6,  // training diverged
};

int run(int argc, char** argv);

}  // namespace wocd::cli
