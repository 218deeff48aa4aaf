#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "tomoml/simulate.hpp"
#include "tomoml/sweep.hpp"

namespace tomoml {

// JSON file formats. Matrices are stored as row-major arrays of [re, im]
// pairs; numbers round-trip exactly (shortest-round-trip serialization).

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// {"dim": d, "effects": [matrix, ...]}
void save_povm(const std::string& path, const Povm& povm);
Povm load_povm(const std::string& path);

struct DatasetFileMeta {
  std::optional<std::string> sampler;
  std::optional<std::uint64_t> seed;
};

/// {"frequencies": [...]} or {"counts": [...]} (plus optional metadata);
/// counts are preferred on write whenever the dataset carries an integral
/// total count.
void save_dataset(const std::string& path, const Dataset& dataset,
                  const DatasetFileMeta& meta = {});
Dataset load_dataset(const std::string& path);

struct ResultPayload {
  ComplexMatrix rho;
  Real loglik = 0.0;
  long iterations = 0;
  std::string termination;
  nlohmann::json config;
};

void save_result(const std::string& path, const ResultPayload& payload);
ResultPayload load_result(const std::string& path);

nlohmann::json solver_config_json(const SolverConfig& config);

/// Header `t,rule,iterations,converged,final_loglik`; RFC-4180, LF endings;
/// rows sorted ascending by t then rule name.
void write_sweep_csv(const std::string& path, std::vector<SweepRow> rows);

/// Per-iteration CSV: k,t,loglik,residual,backtracks,distance. Row k=0 holds
/// the starting point (t and distance are nan there).
void write_iteration_csv(const std::string& path, const IterationLog& log);

}  // namespace tomoml
