#include "tomoml/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace tomoml {

std::string rule_name(const StepSizeRule& rule) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PureRrhoR>) return "rrhor";
        if constexpr (std::is_same_v<T, FixedT>) return "fixed";
        if constexpr (std::is_same_v<T, ArmijoRule>) return "armijo";
        if constexpr (std::is_same_v<T, ExactLineSearchRule>) return "exact";
      },
      rule);
}

void validate(const StepSizeRule& rule) {
  std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FixedT>) {
          if (!(r.t > 0.0) || !std::isfinite(r.t)) {
            throw std::invalid_argument("FixedT: t must be positive and finite");
          }
        } else if constexpr (std::is_same_v<T, ArmijoRule>) {
          if (!(r.t_max > 0.0) || !std::isfinite(r.t_max)) {
            throw std::invalid_argument("ArmijoRule: t_max must be positive");
          }
          if (!(r.gamma > 0.0 && r.gamma < 1.0)) {
            throw std::invalid_argument("ArmijoRule: gamma must lie in (0, 1)");
          }
          if (!(r.alpha0 > 0.0 && r.alpha0 <= r.alpha1 && r.alpha1 < 1.0)) {
            throw std::invalid_argument(
                "ArmijoRule: need 0 < alpha0 <= alpha1 < 1");
          }
          if (r.max_backtracks < 1) {
            throw std::invalid_argument(
                "ArmijoRule: max_backtracks must be at least 1");
          }
        } else if constexpr (std::is_same_v<T, ExactLineSearchRule>) {
          if (!(r.t_max > 0.0) || !std::isfinite(r.t_max)) {
            throw std::invalid_argument(
                "ExactLineSearchRule: t_max must be positive");
          }
          if (r.grid < 4) {
            throw std::invalid_argument(
                "ExactLineSearchRule: grid must be at least 4");
          }
          if (r.refinements < 0) {
            throw std::invalid_argument(
                "ExactLineSearchRule: refinements must be nonnegative");
          }
        }
      },
      rule);
}

std::string to_string(Termination reason) {
  switch (reason) {
    case Termination::converged: return "converged";
    case Termination::max_iterations: return "max_iterations";
    case Termination::cycle_detected: return "cycle_detected";
    case Termination::boundary_error: return "boundary_error";
  }
  return "unknown";
}

namespace {

struct ObjectiveState {
  RealVector p;
  Real loglik;
  ComplexMatrix grad;
  Real residual;  // || R rho - rho ||_F
};

ObjectiveState eval_state(const ObjectiveContext& ctx, const ComplexMatrix& rho) {
  PathEvaluation pe = evaluate_path_point(ctx, rho);
  if (!std::isfinite(pe.loglik)) {
    throw NumericError("solver: non-finite log-likelihood");
  }
  ComplexMatrix grad = gradient_matrix(ctx, pe.probabilities);
  const Real residual = (grad * rho - rho).norm();
  return ObjectiveState{std::move(pe.probabilities), pe.loglik, std::move(grad),
                        residual};
}

ComplexMatrix normalize_trace(ComplexMatrix m) {
  const Real tr = m.trace().real();
  if (!(tr > 0.0) || !std::isfinite(tr)) {
    throw NumericError("solver: sandwiched matrix has nonpositive trace");
  }
  m /= tr;
  ComplexMatrix s = (0.5 * (m + m.adjoint())).eval();
  for (Index i = 0; i < s.rows(); ++i) {
    s(i, i) = Complex(s(i, i).real(), 0.0);
  }
  return s;
}

ComplexMatrix rrhor_matrix(const ComplexMatrix& rho, const ComplexMatrix& grad) {
  return normalize_trace(grad * rho * grad);
}

ComplexMatrix diluted_matrix(const ComplexMatrix& rho, const ComplexMatrix& grad,
                             Real t) {
  const Index d = rho.rows();
  const ComplexMatrix w =
      (ComplexMatrix::Identity(d, d) + t * grad) / (1.0 + t);
  return normalize_trace(w * rho * w);
}

DirectionPair directions_from_state(const ComplexMatrix& rho,
                                    const ComplexMatrix& grad) {
  const ComplexMatrix g_rho = grad * rho;
  const ComplexMatrix rrr = g_rho * grad;
  const Real trace_rrr = rrr.trace().real();
  HermitianMatrix d_sym = hermitianized(0.5 * (g_rho + g_rho.adjoint()) - rho);
  HermitianMatrix d_rrr = hermitianized(rrr / trace_rrr - rho);
  return DirectionPair{std::move(d_sym), std::move(d_rrr), trace_rrr};
}

Real quad_denominator(const DirectionPair& pair, Real t) {
  return 1.0 + 2.0 * t + t * t * pair.trace_rrr;
}

// Slope Tr(R D(t)) assembled from the two fixed inner products.
Real path_slope(Real inner_sym, Real inner_rrr, Real trace_rrr, Real t) {
  const Real q = 1.0 + 2.0 * t + t * t * trace_rrr;
  return (2.0 / q) * inner_sym + (t * trace_rrr / q) * inner_rrr;
}

struct StepOutcome {
  ComplexMatrix next;
  Real t;
  long backtracks;
  ObjectiveState state;
};

StepOutcome armijo_step(const ObjectiveContext& ctx, const ComplexMatrix& rho,
                        const ObjectiveState& cur, const ArmijoRule& rule,
                        Real t_prev) {
  const DirectionPair pair = directions_from_state(rho, cur.grad);
  const Real inner_sym =
      cur.grad.cwiseProduct(pair.d_sym.mat().conjugate()).sum().real();
  const Real inner_rrr =
      cur.grad.cwiseProduct(pair.d_rrr.mat().conjugate()).sum().real();

  const Real t_cap = std::max(rule.t_max, 1.0);
  Real t = std::min(std::max(1.0, t_prev), t_cap);
  const Real shrink = 0.5 * (rule.alpha0 + rule.alpha1);

  long backtracks = 0;
  while (true) {
    bool accepted = false;
    ComplexMatrix trial;
    ObjectiveState trial_state;
    try {
      trial = diluted_matrix(rho, cur.grad, t);
      trial_state = eval_state(ctx, trial);
      const Real slope = path_slope(inner_sym, inner_rrr, pair.trace_rrr, t);
      accepted = trial_state.loglik > cur.loglik + rule.gamma * t * slope;
    } catch (const BoundaryLikelihoodError&) {
      accepted = false;  // trial point infeasible for the data; shrink t
    }
    if (accepted) {
      return StepOutcome{std::move(trial), t, backtracks, std::move(trial_state)};
    }
    if (++backtracks > rule.max_backtracks) {
      std::ostringstream os;
      os << "armijo backtracking exceeded " << rule.max_backtracks
         << " reductions without sufficient increase";
      throw NumericError(os.str());
    }
    t *= shrink;
  }
}

// Bounded ring of recent iterates for cycle detection under PureRrhoR.
class CycleRing {
 public:
  void push(const ComplexMatrix& m) {
    ring_.push_back(m);
    if (ring_.size() > 32) {
      ring_.pop_front();
    }
  }
  bool contains(const ComplexMatrix& m, Real tol) const {
    for (const auto& r : ring_) {
      if ((r - m).norm() <= tol) {
        return true;
      }
    }
    return false;
  }

 private:
  std::deque<ComplexMatrix> ring_;
};

Real golden_section_max(const std::function<Real(Real)>& f, Real lo, Real hi,
                        int rounds, Real seed_t, Real seed_value) {
  constexpr Real inv_phi = 0.6180339887498949;
  Real best_t = seed_t;
  Real best_value = seed_value;
  Real a = lo;
  Real b = hi;
  Real x1 = b - inv_phi * (b - a);
  Real x2 = a + inv_phi * (b - a);
  Real f1 = f(x1);
  Real f2 = f(x2);
  for (int i = 0; i < rounds; ++i) {
    if (f1 > best_value) { best_value = f1; best_t = x1; }
    if (f2 > best_value) { best_value = f2; best_t = x2; }
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return best_t;
}

}  // namespace

DensityMatrix rrhor_step(const ObjectiveContext& ctx, const DensityMatrix& rho) {
  ObjectiveState state = eval_state(ctx, rho.mat());
  return DensityMatrix(hermitianized(rrhor_matrix(rho.mat(), state.grad)));
}

DensityMatrix diluted_step(const ObjectiveContext& ctx, const DensityMatrix& rho,
                           Real t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("diluted_step: t must be positive");
  }
  ObjectiveState state = eval_state(ctx, rho.mat());
  return DensityMatrix(hermitianized(diluted_matrix(rho.mat(), state.grad, t)));
}

DirectionPair ascent_directions(const ObjectiveContext& ctx,
                                const DensityMatrix& rho) {
  ObjectiveState state = eval_state(ctx, rho.mat());
  return directions_from_state(rho.mat(), state.grad);
}

HermitianMatrix search_direction(const DirectionPair& pair, Real t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("search_direction: t must be positive");
  }
  const Real q = quad_denominator(pair, t);
  return hermitianized((2.0 / q) * pair.d_sym.mat() +
                       (t * pair.trace_rrr / q) * pair.d_rrr.mat());
}

bool armijo_accepts(const ObjectiveContext& ctx, const DensityMatrix& rho,
                    const DirectionPair& pair, Real t, Real gamma) {
  if (!(t > 0.0) || !(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("armijo_accepts: need t > 0 and gamma in (0,1)");
  }
  const HermitianMatrix direction = search_direction(pair, t);
  const HermitianMatrix grad = gradient(ctx, rho);
  const Real slope = inner(grad, direction);
  const Real base = log_likelihood(ctx, rho);
  try {
    const Real trial =
        log_likelihood(ctx, hermitianized(rho.mat() + t * direction.mat()));
    return trial > base + gamma * t * slope;
  } catch (const BoundaryLikelihoodError&) {
    return false;
  }
}

Real exact_line_search(const ObjectiveContext& ctx, const DensityMatrix& rho,
                       const DirectionPair& pair, Real t_max, int grid,
                       int refinements) {
  if (!(t_max > 0.0) || grid < 4) {
    throw std::invalid_argument("exact_line_search: invalid parameters");
  }
  const auto value_at = [&](Real t) -> Real {
    const Real q = quad_denominator(pair, t);
    ComplexMatrix trial = rho.mat() + (2.0 * t / q) * pair.d_sym.mat() +
                          (t * t * pair.trace_rrr / q) * pair.d_rrr.mat();
    try {
      return evaluate_path_point(ctx, trial).loglik;
    } catch (const BoundaryLikelihoodError&) {
      return -std::numeric_limits<Real>::infinity();
    }
  };

  // Coarse pass: log-spaced grid over six decades up to t_max.
  const Real hi_exp = std::log10(t_max);
  const Real lo_exp = hi_exp - 6.0;
  std::vector<Real> ts(static_cast<std::size_t>(grid));
  std::vector<Real> values(static_cast<std::size_t>(grid));
  int best = 0;
  for (int i = 0; i < grid; ++i) {
    const Real e = lo_exp + (hi_exp - lo_exp) * i / (grid - 1);
    ts[static_cast<std::size_t>(i)] = std::pow(10.0, e);
    values[static_cast<std::size_t>(i)] = value_at(ts[static_cast<std::size_t>(i)]);
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) {
      best = i;
    }
  }
  const Real lo = ts[static_cast<std::size_t>(std::max(0, best - 1))];
  const Real hi = ts[static_cast<std::size_t>(std::min(grid - 1, best + 1))];
  Real t = golden_section_max(value_at, lo, hi, refinements,
                              ts[static_cast<std::size_t>(best)],
                              values[static_cast<std::size_t>(best)]);
  return std::min(std::max(t, std::numeric_limits<Real>::min()), t_max);
}

HermitianMatrix proximal_maximizer(const ObjectiveContext& ctx,
                                   const DensityMatrix& rho) {
  const HermitianEigen eig = eigen_hermitian(rho.op());
  const Real lo = eig.values(0);
  const Real hi = eig.values(eig.values.size() - 1);
  if (!(lo > 0.0) || hi / lo > NumericPolicy::condition_limit) {
    std::ostringstream os;
    os << "proximal_maximizer: rho is ill-conditioned (eigenvalues in [" << lo
       << ", " << hi << "])";
    throw ConditioningError(os.str());
  }
  const HermitianMatrix grad = gradient(ctx, rho);
  const Index d = rho.dim();
  const ComplexMatrix g_basis =
      eig.vectors.adjoint() * (grad.mat() - ComplexMatrix::Identity(d, d)) *
      eig.vectors;
  ComplexMatrix delta(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      delta(i, j) = 2.0 * g_basis(i, j) * eig.values(i) * eig.values(j) /
                    (eig.values(i) + eig.values(j));
    }
  }
  return hermitianized(rho.mat() + eig.vectors * delta * eig.vectors.adjoint());
}

Real proximal_residual(const ObjectiveContext& ctx, const DensityMatrix& rho) {
  const HermitianMatrix maximizer = proximal_maximizer(ctx, rho);
  const HermitianEigen eig = eigen_hermitian(rho.op());
  const ComplexMatrix rho_inv = eig.vectors *
                                eig.values.cwiseInverse().asDiagonal() *
                                eig.vectors.adjoint();
  const ComplexMatrix delta = maximizer.mat() - rho.mat();
  const HermitianMatrix grad = gradient(ctx, rho);
  const Index d = rho.dim();
  const ComplexMatrix residual = grad.mat() -
                                 0.5 * (delta * rho_inv + rho_inv * delta) -
                                 ComplexMatrix::Identity(d, d);
  return residual.norm();
}

SolveResult solve(const ObjectiveContext& ctx, const DensityMatrix& rho0,
                  const SolverConfig& config) {
  validate(config.rule);
  if (!(config.tol_iterate > 0.0) || !(config.tol_stationarity > 0.0)) {
    throw std::invalid_argument("solve: tolerances must be positive");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("solve: max_iterations must be at least 1");
  }
  if (ctx.dim() != rho0.dim()) {
    throw std::invalid_argument("solve: dimension mismatch");
  }

  IterationLog log;
  ComplexMatrix rho = rho0.mat();
  ObjectiveState cur = eval_state(ctx, rho);  // boundary at rho0 propagates
  log.initial_loglik = cur.loglik;
  log.initial_residual = cur.residual;
  if (config.observer) {
    config.observer(0, rho0);
  }

  const bool pure = std::holds_alternative<PureRrhoR>(config.rule);
  CycleRing ring;
  if (pure) {
    ring.push(rho);
  }
  Real t_prev = 0.0;
  if (const auto* armijo = std::get_if<ArmijoRule>(&config.rule)) {
    t_prev = armijo->t_max;
  }

  if (cur.residual < config.tol_stationarity) {
    log.termination = Termination::converged;
    return SolveResult{DensityMatrix(hermitianized(rho)), std::move(log)};
  }

  Termination reason = Termination::max_iterations;
  long k = 0;
  while (true) {
    if (k >= config.max_iterations) {
      reason = Termination::max_iterations;
      break;
    }
    StepOutcome out;
    try {
      if (pure) {
        ComplexMatrix next = rrhor_matrix(rho, cur.grad);
        ObjectiveState state = eval_state(ctx, next);
        out = StepOutcome{std::move(next),
                          std::numeric_limits<Real>::infinity(), 0,
                          std::move(state)};
      } else if (const auto* fixed = std::get_if<FixedT>(&config.rule)) {
        ComplexMatrix next = diluted_matrix(rho, cur.grad, fixed->t);
        ObjectiveState state = eval_state(ctx, next);
        out = StepOutcome{std::move(next), fixed->t, 0, std::move(state)};
      } else if (const auto* armijo = std::get_if<ArmijoRule>(&config.rule)) {
        out = armijo_step(ctx, rho, cur, *armijo, t_prev);
        t_prev = out.t;
      } else {
        const auto& exact = std::get<ExactLineSearchRule>(config.rule);
        const DirectionPair pair = directions_from_state(rho, cur.grad);
        DensityMatrix here(hermitianized(rho));
        const Real t = exact_line_search(ctx, here, pair, exact.t_max,
                                         exact.grid, exact.refinements);
        ComplexMatrix next = diluted_matrix(rho, cur.grad, t);
        ObjectiveState state = eval_state(ctx, next);
        out = StepOutcome{std::move(next), t, 0, std::move(state)};
      }
    } catch (const BoundaryLikelihoodError&) {
      reason = Termination::boundary_error;
      break;
    } catch (const NumericError& err) {
      log.termination = Termination::max_iterations;
      throw SolverError(err.what(), std::move(log));
    }

    ++k;
    const Real dist = (out.next - rho).norm();
    log.records.push_back(IterationRecord{k, out.t, out.state.loglik,
                                          out.state.residual, out.backtracks,
                                          dist});
    if (config.observer) {
      config.observer(k, DensityMatrix(hermitianized(out.next)));
    }

    const bool stop_dist = dist < config.tol_iterate;
    const bool stop_resid = out.state.residual < config.tol_stationarity;
    bool cycled = false;
    if (pure && !stop_dist && !stop_resid) {
      cycled = ring.contains(out.next, NumericPolicy::cycle_revisit);
    }

    rho = std::move(out.next);
    cur = std::move(out.state);

    if (stop_dist || stop_resid) {
      reason = Termination::converged;
      break;
    }
    if (cycled) {
      reason = Termination::cycle_detected;
      break;
    }
    if (pure) {
      ring.push(rho);
    }
  }

  log.termination = reason;
  return SolveResult{DensityMatrix(hermitianized(rho)), std::move(log)};
}

}  // namespace tomoml
