// Command-line front end: estimate density matrices from measurement data,
// generate simulated experiments, sweep stepsize parameters, and run the
// randomized invariant checks.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tomoml/io.hpp"
#include "tomoml/verify.hpp"

namespace {

using namespace tomoml;

constexpr int kExitConverged = 0;
constexpr int kExitInternal = 1;
constexpr int kExitMaxIterations = 2;
constexpr int kExitCycle = 3;
constexpr int kExitInput = 4;
constexpr int kExitBoundary = 5;

int exit_code_for(Termination reason) {
  switch (reason) {
    case Termination::converged: return kExitConverged;
    case Termination::max_iterations: return kExitMaxIterations;
    case Termination::cycle_detected: return kExitCycle;
    case Termination::boundary_error: return kExitBoundary;
  }
  return kExitInternal;
}

struct EstimateOptions {
  std::string povm_path;
  std::string data_path;
  std::string rule = "armijo";
  double t = 1.0;
  double t_max = 1.0;
  double gamma = 1e-4;
  double alpha0 = 0.5;
  double alpha1 = 0.5;
  long max_backtracks = 60;
  int grid = 128;
  int refinements = 48;
  double tol = NumericPolicy::tol_iterate;
  double tol_stationarity = NumericPolicy::tol_stationarity;
  long max_iter = NumericPolicy::max_iterations;
  std::string init = "mixed";
  std::string out_path;
  std::string log_path;
};

int run_estimate(const EstimateOptions& opt) {
  Povm povm = load_povm(opt.povm_path);
  Dataset data = load_dataset(opt.data_path);
  ObjectiveContext ctx(std::move(povm), std::move(data));

  SolverConfig config;
  if (opt.rule == "armijo") {
    config.rule = ArmijoRule{opt.t_max, opt.gamma, opt.alpha0, opt.alpha1,
                             opt.max_backtracks};
  } else if (opt.rule == "fixed") {
    config.rule = FixedT{opt.t};
  } else if (opt.rule == "rrhor") {
    config.rule = PureRrhoR{};
  } else if (opt.rule == "exact") {
    config.rule = ExactLineSearchRule{opt.t_max, opt.grid, opt.refinements};
  } else {
    throw std::invalid_argument("unknown rule '" + opt.rule +
                                "' (expected armijo, fixed, rrhor or exact)");
  }
  config.tol_iterate = opt.tol;
  config.tol_stationarity = opt.tol_stationarity;
  config.max_iterations = opt.max_iter;

  DensityMatrix rho0 = [&]() {
    if (opt.init == "mixed") {
      return maximally_mixed(ctx.dim());
    }
    ResultPayload seed = load_result(opt.init);
    return DensityMatrix(HermitianMatrix(seed.rho));
  }();

  const SolveResult result = solve(ctx, rho0, config);

  std::printf("termination: %s\n", to_string(result.log.termination).c_str());
  std::printf("iterations:  %ld\n", result.log.iterations());
  std::printf("loglik:      %.17g\n", result.log.final_loglik());

  if (!opt.out_path.empty()) {
    ResultPayload payload{result.estimate.mat(), result.log.final_loglik(),
                          result.log.iterations(),
                          to_string(result.log.termination),
                          solver_config_json(config)};
    save_result(opt.out_path, payload);
  }
  if (!opt.log_path.empty()) {
    write_iteration_csv(opt.log_path, result.log);
  }
  return exit_code_for(result.log.termination);
}

struct SimulateOptions {
  std::string experiment = "counterexample";
  int qubits = 3;
  long shots = 0;  // 0 = noiseless
  std::uint64_t seed = 0;
  std::string out_povm;
  std::string out_data;
};

int run_simulate(const SimulateOptions& opt) {
  ExperimentSpec spec = [&]() {
    if (opt.experiment == "counterexample") {
      return counterexample_spec();
    }
    if (opt.experiment == "w-state") {
      return w_state_spec(opt.qubits);
    }
    throw std::invalid_argument("unknown experiment '" + opt.experiment +
                                "' (expected counterexample or w-state)");
  }();

  Dataset dataset = spec.dataset;
  DatasetFileMeta meta;
  if (opt.shots > 0) {
    dataset = sample_from_frequencies(spec.dataset.frequencies(), opt.shots,
                                      RngSeed{opt.seed});
    meta.sampler = sampler_version();
    meta.seed = opt.seed;
  }
  if (!opt.out_povm.empty()) {
    save_povm(opt.out_povm, spec.povm);
  }
  if (!opt.out_data.empty()) {
    save_dataset(opt.out_data, dataset, meta);
  }
  std::printf("experiment:  %s (dim %ld, %ld effects)\n", spec.name.c_str(),
              static_cast<long>(spec.dim),
              static_cast<long>(spec.povm.size()));
  if (opt.shots > 0) {
    std::printf("dataset:     sampled, %ld shots, seed %llu\n", opt.shots,
                static_cast<unsigned long long>(opt.seed));
  } else {
    std::printf("dataset:     noiseless\n");
  }
  return 0;
}

struct SweepCliOptions {
  std::string povm_path;
  std::string data_path;
  std::string t_values = "log:1e-3:1e3:13";
  std::string rules = "fixed,armijo";
  double gamma = 1e-4;
  double alpha0 = 0.5;
  double alpha1 = 0.5;
  double tol = NumericPolicy::tol_iterate;
  double tol_stationarity = NumericPolicy::tol_stationarity;
  long max_iter = NumericPolicy::max_iterations;
  std::string out_path;
};

int run_sweep_cmd(const SweepCliOptions& opt) {
  Povm povm = load_povm(opt.povm_path);
  Dataset data = load_dataset(opt.data_path);
  ObjectiveContext ctx(std::move(povm), std::move(data));

  SweepRequest request;
  request.t_values = parse_t_values(opt.t_values);
  request.rules.clear();
  std::istringstream rules(opt.rules);
  std::string rule;
  while (std::getline(rules, rule, ',')) {
    if (!rule.empty()) request.rules.push_back(rule);
  }
  request.gamma = opt.gamma;
  request.alpha0 = opt.alpha0;
  request.alpha1 = opt.alpha1;
  request.tol_iterate = opt.tol;
  request.tol_stationarity = opt.tol_stationarity;
  request.max_iterations = opt.max_iter;

  const auto rows = run_sweep(ctx, maximally_mixed(ctx.dim()), request);
  write_sweep_csv(opt.out_path, rows);
  std::printf("wrote %zu rows to %s\n", rows.size(), opt.out_path.c_str());
  return 0;
}

struct VerifyCliOptions {
  long trials = 200;
  long dim_max = 8;
  std::uint64_t seed = 20140902;
};

int run_verify(const VerifyCliOptions& opt) {
  VerifyOptions options;
  options.trials = opt.trials;
  options.dim_max = static_cast<Index>(opt.dim_max);
  options.seed = opt.seed;
  const auto results = run_invariant_checks(options);
  const bool ok = print_report(std::cout, results, options);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum-likelihood quantum state tomography via diluted "
               "R-rho-R iterations with line search"};
  app.require_subcommand(1);

  EstimateOptions est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "estimate a density matrix from POVM and frequency files");
  estimate->add_option("--povm", est.povm_path, "POVM JSON file")->required();
  estimate->add_option("--data", est.data_path, "dataset JSON file")->required();
  estimate->add_option("--rule", est.rule, "armijo|fixed|rrhor|exact");
  estimate->add_option("--t", est.t, "stepsize for --rule fixed");
  estimate->add_option("--t-max", est.t_max, "stepsize cap for armijo/exact");
  estimate->add_option("--gamma", est.gamma, "Armijo sufficient-increase factor");
  estimate->add_option("--alpha0", est.alpha0, "backtracking interval low end");
  estimate->add_option("--alpha1", est.alpha1, "backtracking interval high end");
  estimate->add_option("--max-backtracks", est.max_backtracks,
                       "Armijo backtrack cap per iteration");
  estimate->add_option("--grid", est.grid, "exact-rule grid points");
  estimate->add_option("--refinements", est.refinements,
                       "exact-rule golden-section rounds");
  estimate->add_option("--tol", est.tol,
                       "consecutive-iterate distance tolerance");
  estimate->add_option("--tol-stationarity", est.tol_stationarity,
                       "extremal residual tolerance");
  estimate->add_option("--max-iter", est.max_iter, "iteration budget");
  estimate->add_option("--init", est.init,
                       "'mixed' or a result JSON file with a rho field");
  estimate->add_option("--out", est.out_path, "result JSON output path");
  estimate->add_option("--log", est.log_path, "per-iteration CSV output path");

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "write POVM and dataset files for a built-in experiment");
  simulate->add_option("--experiment", sim.experiment,
                       "counterexample|w-state");
  simulate->add_option("--qubits", sim.qubits, "qubit count for w-state")
      ->check(CLI::Range(1, 4));
  simulate->add_option("--shots", sim.shots,
                       "sample this many shots (omit for noiseless)");
  simulate->add_option("--seed", sim.seed, "sampling seed")
      ->envname("TOMOML_SEED");
  simulate->add_option("--out-povm", sim.out_povm, "POVM JSON output path");
  simulate->add_option("--out-data", sim.out_data, "dataset JSON output path");

  SweepCliOptions swp;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run fixed/armijo rules over a grid of t values, write CSV");
  sweep->add_option("--povm", swp.povm_path, "POVM JSON file")->required();
  sweep->add_option("--data", swp.data_path, "dataset JSON file")->required();
  sweep->add_option("--t-values", swp.t_values,
                    "comma list '0.1,1,10' or 'log:<lo>:<hi>:<count>'");
  sweep->add_option("--rules", swp.rules, "comma list from {fixed, armijo}");
  sweep->add_option("--gamma", swp.gamma, "Armijo sufficient-increase factor");
  sweep->add_option("--alpha0", swp.alpha0, "backtracking interval low end");
  sweep->add_option("--alpha1", swp.alpha1, "backtracking interval high end");
  sweep->add_option("--tol", swp.tol,
                    "consecutive-iterate distance tolerance");
  sweep->add_option("--tol-stationarity", swp.tol_stationarity,
                    "extremal residual tolerance");
  sweep->add_option("--max-iter", swp.max_iter, "iteration budget per cell");
  sweep->add_option("--out", swp.out_path, "CSV output path")->required();

  VerifyCliOptions ver;
  CLI::App* verify = app.add_subcommand(
      "verify", "run randomized invariant checks, exit 1 on any failure");
  verify->add_option("--trials", ver.trials, "instances per family")
      ->check(CLI::PositiveNumber);
  verify->add_option("--dim-max", ver.dim_max, "largest random dimension")
      ->check(CLI::Range(2, 16));
  verify->add_option("--seed", ver.seed, "generator seed")
      ->envname("TOMOML_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*estimate) return run_estimate(est);
    if (*simulate) return run_simulate(sim);
    if (*sweep) return run_sweep_cmd(swp);
    if (*verify) return run_verify(ver);
  } catch (const BoundaryLikelihoodError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitInput;
  } catch (const NumericError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitInternal;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitInput;
  }
  return kExitInput;
}
