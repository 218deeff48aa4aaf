#include <doctest.h>

#include <cmath>

#include "tomoml/random_instances.hpp"
#include "tomoml/simulate.hpp"
#include "tomoml/solver.hpp"
#include "test_helpers.hpp"

using namespace tomoml;
using tomoml::testing::diag2;

namespace {

ObjectiveContext cycling_ctx() {
  const ExperimentSpec spec = counterexample_spec();
  return ObjectiveContext(spec.povm, spec.dataset);
}

const Real kOptimum = (1.0 / 3.0) * std::log(1.0 / 3.0) +
                      (2.0 / 3.0) * std::log(2.0 / 3.0);

DensityMatrix optimum() { return DensityMatrix(diag2(1.0 / 3.0, 2.0 / 3.0)); }

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("rrhor_step reproduces the period-two cycle") {
  const ObjectiveContext ctx = cycling_ctx();

  const DensityMatrix first = rrhor_step(ctx, maximally_mixed(2));
  CHECK(first.mat()(0, 0).real() == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(first.mat()(1, 1).real() == doctest::Approx(0.8).epsilon(1e-14));

  const DensityMatrix second = rrhor_step(ctx, first);
  CHECK(second.mat()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(second.mat()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-13));

  const DensityMatrix fixed_point = rrhor_step(ctx, optimum());
  CHECK(frobenius_distance(fixed_point.op(), optimum().op()) <= 1e-14);
}

TEST_CASE("diluted_step") {
  const ObjectiveContext ctx = cycling_ctx();
  const DensityMatrix mixed = maximally_mixed(2);

  // t -> 0 leaves the point in place
  CHECK(frobenius_distance(diluted_step(ctx, mixed, 1e-9).op(), mixed.op()) <=
        1e-8);

  const DensityMatrix one = diluted_step(ctx, mixed, 1.0);
  CHECK(one.mat()(0, 0).real() == doctest::Approx(25.0 / 74.0).epsilon(1e-14));
  CHECK(one.mat()(1, 1).real() == doctest::Approx(49.0 / 74.0).epsilon(1e-14));

  // t -> infinity approaches the undamped step
  CHECK(frobenius_distance(diluted_step(ctx, mixed, 1e6).op(),
                           rrhor_step(ctx, mixed).op()) <= 1e-5);

  CHECK_THROWS_AS(diluted_step(ctx, mixed, 0.0), std::invalid_argument);
}

TEST_CASE("diluted steps match the undamped step at large t on random instances") {
  InstanceRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 2 + trial % 4;
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix rho = rng.density(d);
    CHECK(frobenius_distance(diluted_step(ctx, rho, 1e6).op(),
                             rrhor_step(ctx, rho).op()) <= 1e-5);
  }
}

TEST_CASE("ascent_directions") {
  const ObjectiveContext ctx = cycling_ctx();
  const DirectionPair pair = ascent_directions(ctx, maximally_mixed(2));

  CHECK(pair.d_sym(0, 0).real() == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
  CHECK(pair.d_sym(1, 1).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(pair.d_rrr(0, 0).real() == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(pair.d_rrr(1, 1).real() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(pair.trace_rrr == doctest::Approx(10.0 / 9.0).epsilon(1e-14));
  CHECK(std::abs(trace(pair.d_sym)) <= 1e-10);
  CHECK(std::abs(trace(pair.d_rrr)) <= 1e-10);

  const DirectionPair at_opt = ascent_directions(ctx, optimum());
  CHECK(at_opt.d_sym.mat().norm() <= 1e-14);
  CHECK(at_opt.d_rrr.mat().norm() <= 1e-14);
}

TEST_CASE("search_direction") {
  const ObjectiveContext ctx = cycling_ctx();
  const DensityMatrix mixed = maximally_mixed(2);
  const DirectionPair pair = ascent_directions(ctx, mixed);

  const HermitianMatrix at_one = search_direction(pair, 1.0);
  CHECK(at_one(0, 0).real() == doctest::Approx(-6.0 / 37.0).epsilon(1e-13));
  CHECK(at_one(1, 1).real() == doctest::Approx(6.0 / 37.0).epsilon(1e-13));
  CHECK(frobenius_distance(hermitianized(mixed.mat() + at_one.mat()),
                           diluted_step(ctx, mixed, 1.0).op()) <= 1e-12);

  // small t: parallel to the symmetrized-product direction, factor 2
  const HermitianMatrix small = search_direction(pair, 1e-9);
  CHECK((small.mat() - 2.0 * pair.d_sym.mat()).norm() <= 1e-8);

  // large t: rho + t D(t) approaches the undamped target point
  const Real t_large = 1e6;
  const HermitianMatrix big = search_direction(pair, t_large);
  const ComplexMatrix target = mixed.mat() + pair.d_rrr.mat();
  CHECK((mixed.mat() + t_large * big.mat() - target).norm() <= 1e-6);
}

TEST_CASE("path identity on random instances") {
  InstanceRng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = 2 + trial % 5;
    const ObjectiveContext ctx = rng.context(d);
    const DensityMatrix rho = rng.density(d);
    const Real t = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
    const DirectionPair pair = ascent_directions(ctx, rho);
    const HermitianMatrix dir = search_direction(pair, t);
    CHECK((rho.mat() + t * dir.mat() - diluted_step(ctx, rho, t).mat())
              .norm() <= 1e-12);
  }
}

TEST_CASE("armijo_accepts") {
  const ObjectiveContext ctx = cycling_ctx();
  const DensityMatrix mixed = maximally_mixed(2);
  const DirectionPair pair = ascent_directions(ctx, mixed);

  // ascent directions are accepted for sufficiently small t
  CHECK(armijo_accepts(ctx, mixed, pair, 1e-6, 1e-4));

  // scalar evaluation of both sides of the test at t = 1
  const Real lhs =
      (1.0 / 3.0) * std::log(25.0 / 74.0) + (2.0 / 3.0) * std::log(49.0 / 74.0);
  const Real slope = 4.0 / 37.0;  // Tr(R D(1)) by hand
  const Real rhs = -std::log(2.0) + 1e-4 * 1.0 * slope;
  CHECK(lhs > rhs);
  CHECK(armijo_accepts(ctx, mixed, pair, 1.0, 1e-4));

  const HermitianMatrix dir = search_direction(pair, 1.0);
  const Real measured_slope = inner(gradient(ctx, mixed), dir);
  CHECK(measured_slope == doctest::Approx(slope).epsilon(1e-12));
}

TEST_CASE("solve detects the cycle under the undamped rule") {
  const ObjectiveContext ctx = cycling_ctx();
  SolverConfig config;
  config.rule = PureRrhoR{};
  std::vector<ComplexMatrix> iterates;
  config.observer = [&](long, const DensityMatrix& rho) {
    iterates.push_back(rho.mat());
  };

  const SolveResult result = solve(ctx, maximally_mixed(2), config);
  CHECK(result.log.termination == Termination::cycle_detected);
  REQUIRE(iterates.size() >= 3);
  CHECK(iterates[1](0, 0).real() == doctest::Approx(0.2).epsilon(1e-13));
  CHECK((iterates[2] - iterates[0]).norm() <= 1e-12);
}

TEST_CASE("solve with the Armijo rule reaches the maximizer") {
  const ObjectiveContext ctx = cycling_ctx();
  SolverConfig config;
  config.rule = ArmijoRule{1.0, 1e-4, 0.5, 0.5, 60};

  const SolveResult result = solve(ctx, maximally_mixed(2), config);
  CHECK(result.log.termination == Termination::converged);
  CHECK(std::abs(result.estimate.mat()(0, 0).real() - 1.0 / 3.0) <= 1e-6);
  CHECK(std::abs(result.estimate.mat()(1, 1).real() - 2.0 / 3.0) <= 1e-6);
  CHECK(std::abs(result.log.final_loglik() - kOptimum) <= 1e-9);

  // strictly increasing likelihood along the run
  Real prev = result.log.initial_loglik;
  for (const auto& rec : result.log.records) {
    CHECK(rec.loglik > prev - 1e-14);
    prev = rec.loglik;
  }
}

TEST_CASE("solve with fixed t converges to the same point, slower for large t") {
  const ObjectiveContext ctx = cycling_ctx();
  std::vector<long> iterations;
  for (Real t : {0.1, 1.0, 10.0}) {
    SolverConfig config;
    config.rule = FixedT{t};
    const SolveResult result = solve(ctx, maximally_mixed(2), config);
    CHECK(result.log.termination == Termination::converged);
    CHECK(std::abs(result.estimate.mat()(0, 0).real() - 1.0 / 3.0) <= 1e-5);
    iterations.push_back(result.log.iterations());
  }
  CHECK(iterations[2] >= iterations[1]);
}

TEST_CASE("solve keeps every iterate feasible") {
  const ObjectiveContext ctx = cycling_ctx();
  SolverConfig config;
  config.rule = ArmijoRule{100.0, 1e-4, 0.5, 0.5, 60};
  Real worst_trace = 0.0;
  Real worst_eig = 0.0;
  config.observer = [&](long, const DensityMatrix& rho) {
    worst_trace = std::max(worst_trace, std::abs(trace(rho.op()) - 1.0));
    worst_eig = std::min(worst_eig, min_eigenvalue(rho.op()));
  };
  InstanceRng rng(33);
  const SolveResult result = solve(ctx, rng.density(2, 0.2), config);
  CHECK(result.log.termination == Termination::converged);
  CHECK(worst_trace <= NumericPolicy::unit_trace);
  CHECK(worst_eig >= -NumericPolicy::psd_slack);
}

TEST_CASE("solve from a stationary point stops immediately") {
  const ObjectiveContext ctx = cycling_ctx();
  SolverConfig config;
  config.rule = ArmijoRule{};
  const SolveResult result = solve(ctx, optimum(), config);
  CHECK(result.log.termination == Termination::converged);
  CHECK(result.log.iterations() == 0);
}

TEST_CASE("solve propagates a boundary error at the starting point") {
  RealVector f(2);
  f << 0.5, 0.5;
  const ObjectiveContext ctx(Povm({diag2(1, 0), diag2(0, 1)}), Dataset(f));
  SolverConfig config;
  config.rule = ArmijoRule{};
  CHECK_THROWS_AS(solve(ctx, DensityMatrix(diag2(1.0, 0.0)), config),
                  BoundaryLikelihoodError);
}

TEST_CASE("exhausted backtracking raises a solver error with the log attached") {
  const ObjectiveContext ctx = cycling_ctx();
  SolverConfig config;
  // second iteration needs several rejections before the step shrinks enough
  config.rule = ArmijoRule{1000.0, 1e-4, 0.5, 0.5, 2};
  try {
    solve(ctx, maximally_mixed(2), config);
    FAIL("expected SolverError");
  } catch (const SolverError& err) {
    CHECK(err.log().iterations() >= 1);
  }
}

TEST_CASE("exact_line_search agrees with a brute-force scan") {
  const ObjectiveContext ctx = cycling_ctx();
  const DensityMatrix skew(diag2(0.9, 0.1));
  const DirectionPair pair = ascent_directions(ctx, skew);

  for (Real t_max : {1.0, 10.0}) {
    const Real t_ref = exact_line_search(ctx, skew, pair, t_max, 128, 48);
    CHECK(t_ref > 0.0);
    CHECK(t_ref <= t_max);

    Real best_t = 0.0;
    Real best_value = -1e300;
    const int points = 20000;
    for (int k = 0; k < points; ++k) {
      const Real t =
          std::pow(10.0, std::log10(t_max) - 6.0 + 6.0 * k / (points - 1.0));
      const HermitianMatrix dir = search_direction(pair, t);
      Real value;
      try {
        value = log_likelihood(ctx, hermitianized(skew.mat() + t * dir.mat()));
      } catch (const BoundaryLikelihoodError&) {
        continue;
      }
      if (value > best_value) {
        best_value = value;
        best_t = t;
      }
    }
    CHECK(std::abs(t_ref - best_t) / best_t <= 1e-3);
  }
}

TEST_CASE("exact_line_search near a stationary point changes nothing") {
  const ObjectiveContext ctx = cycling_ctx();
  const DensityMatrix rho = optimum();
  const DirectionPair pair = ascent_directions(ctx, rho);
  const Real t = exact_line_search(ctx, rho, pair, 1.0, 64, 24);
  const HermitianMatrix dir = search_direction(pair, t);
  const Real before = log_likelihood(ctx, rho);
  const Real after =
      log_likelihood(ctx, hermitianized(rho.mat() + t * dir.mat()));
  CHECK(std::abs(after - before) <= 1e-12);
}

TEST_CASE("solve with the exact line-search reference rule") {
  const ObjectiveContext ctx = cycling_ctx();
  SolverConfig config;
  config.rule = ExactLineSearchRule{1.0, 64, 32};
  const SolveResult result = solve(ctx, maximally_mixed(2), config);
  CHECK(result.log.termination == Termination::converged);
  CHECK(std::abs(result.log.final_loglik() - kOptimum) <= 1e-9);
}

TEST_CASE("quadratic model maximizer and certificate") {
  const ObjectiveContext ctx = cycling_ctx();
  const DensityMatrix mixed = maximally_mixed(2);

  // commuting case: coincides with the symmetrized product point
  const HermitianMatrix maximizer = proximal_maximizer(ctx, mixed);
  CHECK(maximizer(0, 0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(maximizer(1, 1).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(proximal_residual(ctx, mixed) <= 1e-13);

  // stationary point: maximizer is the point itself and the residual is
  // || R - I || = 0
  CHECK(proximal_residual(ctx, optimum()) <= 1e-12);

  InstanceRng rng(34);
  for (int trial = 0; trial < 25; ++trial) {
    const ObjectiveContext random_ctx = rng.context(2);
    const DensityMatrix rho = rng.density(2);
    CHECK(proximal_residual(random_ctx, rho) <= 1e-9);
  }
}

TEST_CASE("quadratic model rejects ill-conditioned states") {
  const ObjectiveContext ctx = cycling_ctx();
  const DensityMatrix nearly_pure(diag2(1.0 - 1e-14, 1e-14));
  CHECK_THROWS_AS(proximal_residual(ctx, nearly_pure), ConditioningError);
}

TEST_CASE("rule validation") {
  CHECK_THROWS_AS(validate(StepSizeRule(FixedT{-1.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(StepSizeRule(ArmijoRule{1.0, 0.0, 0.5, 0.5, 60})),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(StepSizeRule(ArmijoRule{1.0, 1e-4, 0.7, 0.5, 60})),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(StepSizeRule(ExactLineSearchRule{1.0, 2, 8})),
                  std::invalid_argument);
  CHECK_NOTHROW(validate(StepSizeRule(ArmijoRule{1.0, 1e-4, 0.25, 0.75, 60})));
}

}  // TEST_SUITE
