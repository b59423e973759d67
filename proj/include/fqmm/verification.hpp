#pragma once

#include <string>
#include <vector>

namespace fqmm {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationOptions {
  // Fault injection for exercising the failure path: negate every D_n block.
  bool flip_dn_sign = false;
};

/// Runs every cross-module invariant at verification sizes.
std::vector<CheckResult> run_verification(const VerificationOptions& options = {});

/// Informational notes on known inconsistencies in the published derivation.
std::vector<std::string> erratum_notes();

}  // namespace fqmm
