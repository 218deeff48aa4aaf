#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "tomoml/likelihood.hpp"

namespace tomoml {

// Stepsize rules for the iteration rho <- N (I + tR) rho (I + tR) / (1+t)^2.

/// Undamped fixed-point update rho <- N R rho R (the t -> infinity limit).
struct PureRrhoR {};

/// Damped update with a constant dilution parameter.
struct FixedT {
  Real t = 1.0;
};

/// Backtracking line search along the curved path rho + t D(t): accept the
/// first trial t whose likelihood gain exceeds gamma * t * Tr(R D(t)).
/// Trial stepsizes start at min(max(1, previous t), max(t_max, 1)) and shrink
/// by the midpoint of [alpha0, alpha1] on rejection.
struct ArmijoRule {
  Real t_max = 1.0;
  Real gamma = 1e-4;
  Real alpha0 = 0.5;
  Real alpha1 = 0.5;
  long max_backtracks = 60;
};

/// Reference rule: per iteration, approximately maximize the likelihood over
/// t in (0, t_max] with a log-spaced grid plus golden-section refinement.
struct ExactLineSearchRule {
  Real t_max = 1.0;
  int grid = 128;
  int refinements = 48;
};

using StepSizeRule =
    std::variant<PureRrhoR, FixedT, ArmijoRule, ExactLineSearchRule>;

std::string rule_name(const StepSizeRule& rule);
void validate(const StepSizeRule& rule);

struct SolverConfig {
  StepSizeRule rule = ArmijoRule{};
  Real tol_iterate = NumericPolicy::tol_iterate;
  Real tol_stationarity = NumericPolicy::tol_stationarity;
  long max_iterations = NumericPolicy::max_iterations;
  /// Optional hook, called with (0, rho0) and (k, rho_k) for every accepted
  /// iterate.
  std::function<void(long, const DensityMatrix&)> observer;
};

enum class Termination { converged, max_iterations, cycle_detected, boundary_error };

std::string to_string(Termination reason);

struct IterationRecord {
  long k;                 // index of the iterate this step produced (1-based)
  Real t;                 // accepted stepsize (infinity for PureRrhoR)
  Real loglik;            // F at the new iterate
  Real residual_extremal; // || R rho - rho ||_F at the new iterate
  long backtracks;        // Armijo rejections in this step
  Real iterate_distance;  // || rho_k - rho_{k-1} ||_F
};

struct IterationLog {
  Real initial_loglik = 0.0;
  Real initial_residual = 0.0;
  std::vector<IterationRecord> records;
  Termination termination = Termination::max_iterations;

  long iterations() const { return static_cast<long>(records.size()); }
  Real final_loglik() const {
    return records.empty() ? initial_loglik : records.back().loglik;
  }
};

/// Solver failure that keeps the partial iteration history.
class SolverError : public NumericError {
 public:
  SolverError(const std::string& what, IterationLog log)
      : NumericError(what), log_(std::move(log)) {}
  const IterationLog& log() const { return log_; }

 private:
  IterationLog log_;
};

/// The two ascent directions spanning the search path, both traceless:
/// d_sym points to the symmetrized product (R rho + rho R)/2 and d_rrr to the
/// trace-normalized R rho R point. trace_rrr = Tr(R rho R) <= q-curvature.
struct DirectionPair {
  HermitianMatrix d_sym;
  HermitianMatrix d_rrr;
  Real trace_rrr;
};

/// rho <- R rho R, normalized to unit trace.
DensityMatrix rrhor_step(const ObjectiveContext& ctx, const DensityMatrix& rho);

/// rho <- (I + tR) rho (I + tR) / (1+t)^2, normalized to unit trace.
DensityMatrix diluted_step(const ObjectiveContext& ctx, const DensityMatrix& rho,
                           Real t);

DirectionPair ascent_directions(const ObjectiveContext& ctx,
                                const DensityMatrix& rho);

/// D(t) = (2/q) d_sym + (t trace_rrr / q) d_rrr with
/// q = 1 + 2t + t^2 trace_rrr; satisfies rho + t D(t) == diluted_step(rho, t).
HermitianMatrix search_direction(const DirectionPair& pair, Real t);

/// Sufficient-increase test F(rho + t D(t)) > F(rho) + gamma t Tr(R D(t)).
/// A boundary-likelihood failure at the trial point counts as rejection.
bool armijo_accepts(const ObjectiveContext& ctx, const DensityMatrix& rho,
                    const DirectionPair& pair, Real t, Real gamma);

/// Approximate argmax of F(rho + t D(t)) over (0, t_max]: log-spaced coarse
/// grid, then golden-section refinement of the best bracket. Intended for
/// nonstationary rho.
Real exact_line_search(const ObjectiveContext& ctx, const DensityMatrix& rho,
                       const DirectionPair& pair, Real t_max, int grid,
                       int refinements);

/// Maximizer of the trace-constrained quadratic model
///   max_sigma Tr(R (sigma - rho)) - 1/2 Tr((sigma - rho) rho^{-1} (sigma - rho))
///   s.t. Tr(sigma) = 1,
/// solved exactly in the eigenbasis of rho.
HermitianMatrix proximal_maximizer(const ObjectiveContext& ctx,
                                   const DensityMatrix& rho);

/// Frobenius norm of the first-order optimality residual
/// R - 1/2 [(sigma - rho) rho^{-1} + rho^{-1} (sigma - rho)] - I at the
/// quadratic-model maximizer sigma; near zero certifies the solution.
/// Throws ConditioningError when cond(rho) exceeds
/// NumericPolicy::condition_limit.
Real proximal_residual(const ObjectiveContext& ctx, const DensityMatrix& rho);

struct SolveResult {
  DensityMatrix estimate;
  IterationLog log;
};

/// Run the configured iteration from a strictly interior rho0. Stops when the
/// consecutive-iterate Frobenius distance falls below tol_iterate, the
/// extremal residual || R rho - rho ||_F falls below tol_stationarity, the
/// iteration budget runs out, or (PureRrhoR only) an earlier iterate is
/// revisited within NumericPolicy::cycle_revisit.
SolveResult solve(const ObjectiveContext& ctx, const DensityMatrix& rho0,
                  const SolverConfig& config);

}  // namespace tomoml
