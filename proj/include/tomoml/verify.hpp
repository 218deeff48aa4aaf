#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tomoml/random_instances.hpp"
#include "tomoml/solver.hpp"

namespace tomoml {

struct CheckResult {
  std::string family;
  long trials;
  Real worst;      // worst-case residual over all trials
  Real threshold;  // residual must stay at or below this
  bool pass;
};

struct VerifyOptions {
  long trials = 200;
  Index dim_max = 8;
  std::uint64_t seed = 20140902;
};

/// Randomized checks of the analytic identities and bounds behind the solver:
/// gradient trace identity, sandwiched-trace lower bound (with its equality
/// characterization at stationary instances), quadratic-model certificate and
/// inner-product identity, finite-difference gradient agreement, ascent
/// certificates, path identity, Born normalization / gradient positivity, and
/// likelihood concavity.
std::vector<CheckResult> run_invariant_checks(const VerifyOptions& options);

/// One line per family plus a summary; returns true when every family passed.
bool print_report(std::ostream& os, const std::vector<CheckResult>& results,
                  const VerifyOptions& options);

}  // namespace tomoml
