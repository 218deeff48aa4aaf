#include "tomoml/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tomoml {

std::vector<SweepRow> run_sweep(const ObjectiveContext& ctx,
                                const DensityMatrix& rho0,
                                const SweepRequest& request) {
  if (request.t_values.empty()) {
    throw std::invalid_argument("run_sweep: no t values");
  }
  for (Real t : request.t_values) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw std::invalid_argument("run_sweep: every t must be positive");
    }
  }
  for (const auto& rule : request.rules) {
    if (rule != "fixed" && rule != "armijo") {
      throw std::invalid_argument("run_sweep: unknown rule '" + rule + "'");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(request.t_values.size() * request.rules.size());
  for (Real t : request.t_values) {
    for (const auto& rule : request.rules) {
      SolverConfig config;
      config.tol_iterate = request.tol_iterate;
      config.tol_stationarity = request.tol_stationarity;
      config.max_iterations = request.max_iterations;
      if (rule == "fixed") {
        config.rule = FixedT{t};
      } else {
        config.rule = ArmijoRule{t, request.gamma, request.alpha0,
                                 request.alpha1, request.max_backtracks};
      }
      SweepRow row{t, rule, 0, false,
                   std::numeric_limits<Real>::quiet_NaN()};
      try {
        const SolveResult result = solve(ctx, rho0, config);
        row.iterations = result.log.iterations();
        row.converged = result.log.termination == Termination::converged;
        row.final_loglik = result.log.final_loglik();
      } catch (const SolverError& err) {
        row.iterations = err.log().iterations();
        row.final_loglik = err.log().final_loglik();
      } catch (const std::exception&) {
        // row stays converged=false with NaN likelihood
      }
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.rule < b.rule;
  });
  return rows;
}

std::vector<Real> parse_t_values(const std::string& spec) {
  std::vector<Real> values;
  if (spec.rfind("log:", 0) == 0) {
    std::istringstream is(spec.substr(4));
    std::string lo_s, hi_s, n_s;
    if (!std::getline(is, lo_s, ':') || !std::getline(is, hi_s, ':') ||
        !std::getline(is, n_s, ':')) {
      throw std::invalid_argument(
          "parse_t_values: expected log:<lo>:<hi>:<count>");
    }
    const Real lo = std::stod(lo_s);
    const Real hi = std::stod(hi_s);
    const long n = std::stol(n_s);
    if (!(lo > 0.0) || !(hi >= lo) || n < 1) {
      throw std::invalid_argument("parse_t_values: invalid log range");
    }
    if (n == 1) {
      values.push_back(lo);
      return values;
    }
    const Real lo_exp = std::log10(lo);
    const Real hi_exp = std::log10(hi);
    for (long i = 0; i < n; ++i) {
      values.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1)));
    }
    return values;
  }
  std::istringstream is(spec);
  std::string token;
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    values.push_back(std::stod(token));
  }
  if (values.empty()) {
    throw std::invalid_argument("parse_t_values: empty t list");
  }
  return values;
}

}  // namespace tomoml
