#pragma once

#include <string>
#include <vector>

namespace photomech {

enum class VerifyLevel { Fast, Full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Fast;
  unsigned long seed = 20260823;
  // Mutation canary: flips the sign of the independently recomputed coupling
  // stress inside the energy-momentum equivalence check. A healthy suite must
  // then report that check as failed.
  bool flip_coupling_stress_sign = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the identity-verification suite: finite-difference gradient checks,
// Piola-transform and Legendre-duality identities, the divergence expansion
// of the electric stress, discrete patch and jump tests, dynamic oracles, and
// the cross-formulation trajectory comparison. Deterministic for fixed
// options. Never throws; individual failures (including exceptions inside a
// check) are reported in the results.
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);

// Machine-readable summary of one verification run.
std::string verification_report_json(const VerifyOptions& opt,
                                     const std::vector<CheckResult>& results);

}  // namespace photomech
