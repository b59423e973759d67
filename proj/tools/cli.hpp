#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fqmm::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kPreconditionViolation = 2,
  kVerificationFailure = 3,
};

/// Runs one subcommand. `args` excludes the program name. Data goes to the
/// --out file (or `out` when none is given); summaries and diagnostics go to
/// `log`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

/// Parses a key=value config file into "--key=value" tokens.
std::vector<std::string> read_config(const std::string& path);

}  // namespace fqmm::cli
