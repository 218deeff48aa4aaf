#include "tomoml/verify.hpp"

#include <cmath>
#include <cstdio>

namespace tomoml {

namespace {

Index cycle_dim(long trial, Index dim_max) {
  const Index span = std::max<Index>(dim_max - 1, 1);
  return 2 + static_cast<Index>(trial % span);
}

CheckResult gradient_trace_identity(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x11);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix rho = rng.density(d);
    const StationarityReport rep = stationarity(ctx, rho);
    worst = std::max(worst, std::abs(rep.trace_r_rho - 1.0));
  }
  return CheckResult{"gradient-trace-identity", o.trials, worst, 1e-10,
                     worst <= 1e-10};
}

CheckResult sandwich_trace_lower_bound(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x22);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const DensityMatrix rho = rng.density(d);
    const bool stationary = (trial % 5 == 0);
    const ObjectiveContext ctx =
        stationary ? rng.stationary_context_for(rho) : rng.context(d);
    const StationarityReport rep = stationarity(ctx, rho);
    worst = std::max(worst, std::max(0.0, 1.0 - rep.trace_rrr));
  }
  return CheckResult{"sandwich-trace-lower-bound", o.trials, worst, 1e-10,
                     worst <= 1e-10};
}

// Tr(R rho R) = 1 within 1e-8 exactly when || R rho - rho || <= 1e-10; any
// one-sided violation is reported.
CheckResult sandwich_trace_equality(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x33);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const DensityMatrix rho = rng.density(d);
    const bool stationary = (trial % 2 == 0);
    const ObjectiveContext ctx =
        stationary ? rng.stationary_context_for(rho) : rng.context(d);
    const StationarityReport rep = stationarity(ctx, rho);
    const Real gap = std::abs(rep.trace_rrr - 1.0);
    if (rep.residual_extremal <= 1e-10 && gap > 1e-8) {
      worst = std::max(worst, gap);
    }
    if (gap <= 1e-8 && rep.residual_extremal > 1e-10) {
      worst = std::max(worst, rep.residual_extremal);
    }
  }
  return CheckResult{"sandwich-trace-equality", o.trials, worst, 1e-8,
                     worst <= 1e-8};
}

CheckResult quadratic_model_certificate(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x44);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix rho = rng.density(d);
    worst = std::max(worst, proximal_residual(ctx, rho));
  }
  return CheckResult{"quadratic-model-certificate", o.trials, worst, 1e-9,
                     worst <= 1e-9};
}

CheckResult quadratic_model_identity(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x55);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix rho = rng.density(d);
    const HermitianMatrix maximizer = proximal_maximizer(ctx, rho);
    const ComplexMatrix delta = maximizer.mat() - rho.mat();
    const HermitianMatrix grad = gradient(ctx, rho);
    const Real lhs = grad.mat().cwiseProduct(delta.conjugate()).sum().real();
    const HermitianEigen eig = eigen_hermitian(rho.op());
    const ComplexMatrix rho_inv = eig.vectors *
                                  eig.values.cwiseInverse().asDiagonal() *
                                  eig.vectors.adjoint();
    const Real rhs = (delta * rho_inv * delta).trace().real();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return CheckResult{"quadratic-model-identity", o.trials, worst, 1e-9,
                     worst <= 1e-9};
}

CheckResult gradient_finite_difference(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x66);
  Real worst = 0.0;
  const Real h = 1e-6;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix rho = rng.density(d, 0.25);
    HermitianMatrix dir = rng.traceless_hermitian(d);
    dir = hermitianized(dir.mat() / dir.mat().norm());
    const Real analytic = directional_derivative(ctx, rho, dir);
    const Real plus =
        log_likelihood(ctx, hermitianized(rho.mat() + h * dir.mat()));
    const Real minus =
        log_likelihood(ctx, hermitianized(rho.mat() - h * dir.mat()));
    const Real fd = (plus - minus) / (2.0 * h);
    const Real rel = std::abs(analytic - fd) / std::max(1.0, std::abs(fd));
    worst = std::max(worst, rel);
  }
  return CheckResult{"gradient-finite-difference", o.trials, worst, 1e-5,
                     worst <= 1e-5};
}

CheckResult ascent_certificates(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x77);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix rho = rng.density(d);
    const DirectionPair pair = ascent_directions(ctx, rho);
    const HermitianMatrix grad = gradient(ctx, rho);
    const Real inner_sym = inner(grad, pair.d_sym);
    const Real inner_rrr = inner(grad, pair.d_rrr);
    worst = std::max(worst, std::abs(inner_sym - (pair.trace_rrr - 1.0)));
    worst = std::max(worst, -std::min(inner_sym, 0.0));
    worst = std::max(worst, -std::min(inner_rrr, 0.0));
  }
  return CheckResult{"ascent-certificates", o.trials, worst, 1e-10,
                     worst <= 1e-10};
}

CheckResult path_identity(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x88);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix rho = rng.density(d);
    const Real t = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
    const DirectionPair pair = ascent_directions(ctx, rho);
    const HermitianMatrix dir = search_direction(pair, t);
    const DensityMatrix stepped = diluted_step(ctx, rho, t);
    worst = std::max(
        worst, (rho.mat() + t * dir.mat() - stepped.mat()).norm());
  }
  return CheckResult{"path-identity", o.trials, worst, 1e-12, worst <= 1e-12};
}

CheckResult born_and_gradient_psd(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0x99);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const ObjectiveContext ctx = rng.context(d, true);
    const DensityMatrix rho = rng.density(d);
    const RealVector p = born_probabilities(rho, ctx.povm());
    worst = std::max(worst, std::abs(p.sum() - 1.0));
    worst = std::max(worst, -std::min(min_eigenvalue(gradient(ctx, rho)), 0.0));
  }
  return CheckResult{"born-normalization-gradient-psd", o.trials, worst, 1e-10,
                     worst <= 1e-10};
}

CheckResult concavity(const VerifyOptions& o) {
  InstanceRng rng(o.seed ^ 0xaa);
  Real worst = 0.0;
  for (long trial = 0; trial < o.trials; ++trial) {
    const Index d = cycle_dim(trial, o.dim_max);
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix a = rng.density(d);
    const DensityMatrix b = rng.density(d);
    const Real lam = 0.1 + 0.8 * rng.uniform();
    const DensityMatrix mix(
        hermitianized(lam * a.mat() + (1.0 - lam) * b.mat()));
    const Real gap = lam * log_likelihood(ctx, a) +
                     (1.0 - lam) * log_likelihood(ctx, b) -
                     log_likelihood(ctx, mix);
    worst = std::max(worst, std::max(0.0, gap));
  }
  return CheckResult{"concavity", o.trials, worst, 1e-10, worst <= 1e-10};
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(gradient_trace_identity(options));
  results.push_back(sandwich_trace_lower_bound(options));
  results.push_back(sandwich_trace_equality(options));
  results.push_back(quadratic_model_certificate(options));
  results.push_back(quadratic_model_identity(options));
  results.push_back(gradient_finite_difference(options));
  results.push_back(ascent_certificates(options));
  results.push_back(path_identity(options));
  results.push_back(born_and_gradient_psd(options));
  results.push_back(concavity(options));
  return results;
}

bool print_report(std::ostream& os, const std::vector<CheckResult>& results,
                  const VerifyOptions& options) {
  char line[160];
  std::snprintf(line, sizeof(line),
                "invariant checks: trials=%ld dim_max=%ld seed=%llu",
                options.trials, static_cast<long>(options.dim_max),
                static_cast<unsigned long long>(options.seed));
  os << line << "\n";
  bool all_pass = true;
  for (const auto& r : results) {
    std::snprintf(line, sizeof(line), "%s  %-32s  worst %.3e  tol %.1e",
                  r.pass ? "PASS" : "FAIL", r.family.c_str(), r.worst,
                  r.threshold);
    os << line << "\n";
    all_pass = all_pass && r.pass;
  }
  os << (all_pass ? "all invariant families passed"
                  : "some invariant families FAILED")
     << "\n";
  return all_pass;
}

}  // namespace tomoml
