#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfe::cli {

/// Process exit codes of the qfe tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,        // bad flags, invalid parameters, unknown names
  kExitParse = 2,        // malformed file, hex or bitstring
  kExitValidity = 3,     // game validity violation, aleph key to KeyGen
  kExitAmbiguous = 4,    // decryption measurement not deterministic: key/ct mismatch
  kExitCheckFailed = 5,  // a game run failed its 4/sqrt(n) check
  kExitIo = 6,           // file read/write failure
};

/// Runs the tool on `args` (excluding the program name). Command output goes
/// to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfe::cli
