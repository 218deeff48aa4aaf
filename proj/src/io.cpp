#include "tomoml/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tomoml {

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(path + ": cannot open file");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

RealVector vector_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw std::runtime_error("field '" + field + "' must be a nonempty array");
  }
  RealVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw std::runtime_error("field '" + field + "' entry " +
                               std::to_string(i) + " is not a number");
    }
    v(static_cast<Index>(i)) = j[i].get<Real>();
  }
  return v;
}

std::string format_real(Real value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::runtime_error("matrix must be a nonempty array of rows");
  }
  const Index n = static_cast<Index>(j.size());
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw std::runtime_error("matrix row " + std::to_string(i) +
                               " does not have " + std::to_string(n) +
                               " entries");
    }
    for (Index k = 0; k < n; ++k) {
      const auto& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number()) {
        throw std::runtime_error("matrix entry (" + std::to_string(i) + "," +
                                 std::to_string(k) + ") must be [re, im]");
      }
      m(i, k) = Complex(cell[0].get<Real>(), cell[1].get<Real>());
    }
  }
  return m;
}

void save_povm(const std::string& path, const Povm& povm) {
  nlohmann::json j;
  j["dim"] = povm.dim();
  nlohmann::json effects = nlohmann::json::array();
  for (Index i = 0; i < povm.size(); ++i) {
    effects.push_back(matrix_to_json(povm.effect(i).mat()));
  }
  j["effects"] = std::move(effects);
  write_json_file(path, j);
}

Povm load_povm(const std::string& path) {
  const nlohmann::json j = read_json_file(path);
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw std::runtime_error(path + ": missing integer field 'dim'");
  }
  if (!j.contains("effects") || !j["effects"].is_array() ||
      j["effects"].empty()) {
    throw std::runtime_error(path + ": missing nonempty array field 'effects'");
  }
  const Index dim = j["dim"].get<Index>();
  std::vector<HermitianMatrix> effects;
  effects.reserve(j["effects"].size());
  for (std::size_t i = 0; i < j["effects"].size(); ++i) {
    ComplexMatrix m;
    try {
      m = matrix_from_json(j["effects"][i]);
    } catch (const std::exception& err) {
      throw std::runtime_error(path + ": effect " + std::to_string(i) + ": " +
                               err.what());
    }
    if (m.rows() != dim) {
      throw std::runtime_error(path + ": effect " + std::to_string(i) +
                               " has dimension " + std::to_string(m.rows()) +
                               ", expected " + std::to_string(dim));
    }
    effects.emplace_back(m);
  }
  return Povm(std::move(effects));
}

void save_dataset(const std::string& path, const Dataset& dataset,
                  const DatasetFileMeta& meta) {
  nlohmann::json j;
  bool wrote_counts = false;
  if (dataset.total_count()) {
    const Real n = *dataset.total_count();
    nlohmann::json counts = nlohmann::json::array();
    for (Index i = 0; i < dataset.size(); ++i) {
      counts.push_back(static_cast<long long>(
          std::llround(n * dataset.frequency(i))));
    }
    j["counts"] = std::move(counts);
    wrote_counts = true;
  }
  if (!wrote_counts) {
    nlohmann::json freqs = nlohmann::json::array();
    for (Index i = 0; i < dataset.size(); ++i) {
      freqs.push_back(dataset.frequency(i));
    }
    j["frequencies"] = std::move(freqs);
  }
  if (meta.sampler) {
    j["sampler"] = *meta.sampler;
  }
  if (meta.seed) {
    j["seed"] = *meta.seed;
  }
  write_json_file(path, j);
}

Dataset load_dataset(const std::string& path) {
  const nlohmann::json j = read_json_file(path);
  try {
    if (j.contains("counts")) {
      return Dataset::from_counts(vector_from_json(j["counts"], "counts"));
    }
    if (j.contains("frequencies")) {
      return Dataset(vector_from_json(j["frequencies"], "frequencies"));
    }
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(path + ": " + err.what());
  } catch (const std::runtime_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  throw std::runtime_error(path + ": needs a 'frequencies' or 'counts' field");
}

void save_result(const std::string& path, const ResultPayload& payload) {
  nlohmann::json j;
  j["rho"] = matrix_to_json(payload.rho);
  j["loglik"] = payload.loglik;
  j["iterations"] = payload.iterations;
  j["termination"] = payload.termination;
  j["config"] = payload.config;
  write_json_file(path, j);
}

ResultPayload load_result(const std::string& path) {
  const nlohmann::json j = read_json_file(path);
  for (const char* field : {"rho", "loglik", "iterations", "termination"}) {
    if (!j.contains(field)) {
      throw std::runtime_error(path + ": missing field '" +
                               std::string(field) + "'");
    }
  }
  ResultPayload payload;
  try {
    payload.rho = matrix_from_json(j["rho"]);
  } catch (const std::exception& err) {
    throw std::runtime_error(path + ": rho: " + err.what());
  }
  payload.loglik = j["loglik"].get<Real>();
  payload.iterations = j["iterations"].get<long>();
  payload.termination = j["termination"].get<std::string>();
  if (j.contains("config")) {
    payload.config = j["config"];
  }
  return payload;
}

nlohmann::json solver_config_json(const SolverConfig& config) {
  nlohmann::json j;
  j["rule"] = rule_name(config.rule);
  std::visit(
      [&j](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FixedT>) {
          j["t"] = r.t;
        } else if constexpr (std::is_same_v<T, ArmijoRule>) {
          j["t_max"] = r.t_max;
          j["gamma"] = r.gamma;
          j["alpha0"] = r.alpha0;
          j["alpha1"] = r.alpha1;
          j["max_backtracks"] = r.max_backtracks;
        } else if constexpr (std::is_same_v<T, ExactLineSearchRule>) {
          j["t_max"] = r.t_max;
          j["grid"] = r.grid;
          j["refinements"] = r.refinements;
        }
      },
      config.rule);
  j["tol_iterate"] = config.tol_iterate;
  j["tol_stationarity"] = config.tol_stationarity;
  j["max_iterations"] = config.max_iterations;
  return j;
}

void write_sweep_csv(const std::string& path, std::vector<SweepRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.rule < b.rule;
  });
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  out << "t,rule,iterations,converged,final_loglik\n";
  for (const auto& row : rows) {
    out << format_real(row.t) << ',' << row.rule << ',' << row.iterations
        << ',' << (row.converged ? "true" : "false") << ','
        << format_real(row.final_loglik) << '\n';
  }
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

void write_iteration_csv(const std::string& path, const IterationLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  out << "k,t,loglik,residual,backtracks,distance\n";
  out << "0,nan," << format_real(log.initial_loglik) << ','
      << format_real(log.initial_residual) << ",0,nan\n";
  for (const auto& rec : log.records) {
    out << rec.k << ',' << format_real(rec.t) << ','
        << format_real(rec.loglik) << ',' << format_real(rec.residual_extremal)
        << ',' << rec.backtracks << ',' << format_real(rec.iterate_distance)
        << '\n';
  }
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

}  // namespace tomoml
