#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pentile/analysis.hpp"
#include "pentile/tiling.hpp"

namespace pentile {

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  int failures() const;
  bool all_pass() const { return failures() == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 20110811;
  bool include_tiling = true;
  // Deliberately corrupts one expected constant so the harness can be seen
  // to fail.
  bool inject_fault = false;
  long lemma_samples = 10000;
  long convexity_samples = 100000;
  long identity_samples = 1000;
  long agreement_samples = 1000;
  double tiling_radius = 10.0;
};

// Runs every analysis- and tiling-level check once, deterministically for a
// given seed.
VerificationReport run_verification(const VerifyOptions& options);

std::string report_to_text(const VerificationReport& report);
std::string report_to_json(const VerificationReport& report);

}  // namespace pentile
