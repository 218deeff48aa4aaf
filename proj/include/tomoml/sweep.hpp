#pragma once

#include <string>
#include <vector>

#include "tomoml/solver.hpp"

namespace tomoml {

struct SweepRow {
  Real t;
  std::string rule;  // "fixed" or "armijo"
  long iterations;
  bool converged;
  Real final_loglik;
};

struct SweepRequest {
  std::vector<Real> t_values;
  std::vector<std::string> rules{"fixed", "armijo"};
  // Armijo parameters; each armijo cell runs with t_max equal to the cell's t.
  Real gamma = 1e-4;
  Real alpha0 = 0.5;
  Real alpha1 = 0.5;
  long max_backtracks = 60;
  Real tol_iterate = NumericPolicy::tol_iterate;
  Real tol_stationarity = NumericPolicy::tol_stationarity;
  long max_iterations = NumericPolicy::max_iterations;
};

/// Run every (t, rule) cell to termination. Per-cell failures are recorded as
/// converged=false rows; the sweep itself never aborts. Rows come back sorted
/// ascending by t, then by rule name.
std::vector<SweepRow> run_sweep(const ObjectiveContext& ctx,
                                const DensityMatrix& rho0,
                                const SweepRequest& request);

/// Parse "0.1,1,10" or "log:1e-3:1e3:13" (inclusive log-spaced endpoints).
std::vector<Real> parse_t_values(const std::string& spec);

}  // namespace tomoml
