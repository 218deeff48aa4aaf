#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tomoml/io.hpp"
#include "tomoml/random_instances.hpp"
#include "test_helpers.hpp"

using namespace tomoml;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tomoml_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("povm file round trip") {
  InstanceRng rng(51);
  const Povm povm = rng.povm(3, 7);
  const auto path = temp_file("povm.json");
  save_povm(path.string(), povm);
  const Povm loaded = load_povm(path.string());
  REQUIRE(loaded.size() == povm.size());
  for (Index i = 0; i < povm.size(); ++i) {
    CHECK((loaded.effect(i).mat() - povm.effect(i).mat()).norm() == 0.0);
  }
}

TEST_CASE("dataset file round trip, frequencies") {
  RealVector f(3);
  f << 0.1, 0.7, 0.2;
  const Dataset ds(f);
  const auto path = temp_file("freqs.json");
  save_dataset(path.string(), ds);
  const Dataset loaded = load_dataset(path.string());
  CHECK(loaded.frequencies() == ds.frequencies());
  CHECK_FALSE(loaded.total_count().has_value());
}

TEST_CASE("dataset file round trip, counts") {
  RealVector counts(3);
  counts << 5, 0, 15;
  const Dataset ds = Dataset::from_counts(counts);
  const auto path = temp_file("counts.json");
  save_dataset(path.string(), ds, DatasetFileMeta{sampler_version(), 7});
  const std::string text = slurp(path);
  CHECK(text.find("\"counts\"") != std::string::npos);
  CHECK(text.find("mt19937_64") != std::string::npos);
  const Dataset loaded = load_dataset(path.string());
  CHECK(loaded.frequencies() == ds.frequencies());
  CHECK(*loaded.total_count() == doctest::Approx(20.0));
}

TEST_CASE("result file round trip keeps the density matrix valid") {
  InstanceRng rng(52);
  const DensityMatrix rho = rng.density(3);
  SolverConfig config;
  config.rule = ArmijoRule{};
  const ResultPayload payload{rho.mat(), -1.234567890123456789, 42,
                              "converged", solver_config_json(config)};
  const auto path = temp_file("result.json");
  save_result(path.string(), payload);
  const ResultPayload loaded = load_result(path.string());
  CHECK((loaded.rho - rho.mat()).norm() == 0.0);
  CHECK(loaded.loglik == payload.loglik);
  CHECK(loaded.iterations == 42);
  CHECK(loaded.termination == "converged");
  CHECK_NOTHROW(DensityMatrix(HermitianMatrix(loaded.rho)));
  CHECK(loaded.config.at("rule") == "armijo");
}

TEST_CASE("malformed files raise descriptive errors") {
  const auto garbled = temp_file("garbled.json");
  std::ofstream(garbled) << "{ not json";
  CHECK_THROWS_AS(load_povm(garbled.string()), std::runtime_error);
  CHECK_THROWS_AS(load_dataset(garbled.string()), std::runtime_error);

  const auto missing = temp_file("missing_field.json");
  std::ofstream(missing) << "{\"dim\": 2}";
  CHECK_THROWS_WITH_AS(load_povm(missing.string()),
                       doctest::Contains("effects"), std::runtime_error);

  const auto incomplete = temp_file("incomplete_povm.json");
  {
    nlohmann::json j;
    j["dim"] = 2;
    j["effects"] = nlohmann::json::array();
    j["effects"].push_back(matrix_to_json(ComplexMatrix::Identity(2, 2) * 0.5));
    std::ofstream(incomplete) << j.dump();
  }
  CHECK_THROWS_WITH_AS(load_povm(incomplete.string()),
                       doctest::Contains("identity"), std::invalid_argument);

  CHECK_THROWS_AS(load_dataset(temp_file("absent.json").string()),
                  std::runtime_error);
}

TEST_CASE("sweep CSV format") {
  std::vector<SweepRow> rows{
      {10.0, "fixed", 77, true, -0.636514168294813},
      {0.001, "fixed", 4230, true, -0.636514168294813},
      {10.0, "armijo", 77, true, -0.636514168294813},
      {0.001, "armijo", 3, false, -0.7},
  };
  const auto path = temp_file("sweep.csv");
  write_sweep_csv(path.string(), rows);
  const std::string text = slurp(path);

  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "t,rule,iterations,converged,final_loglik");
  std::vector<std::string> body;
  while (std::getline(lines, line)) {
    if (!line.empty()) body.push_back(line);
  }
  REQUIRE(body.size() == rows.size());
  // sorted ascending by t, then rule name
  CHECK(body[0].rfind("0.001,armijo,3,false", 0) == 0);
  CHECK(body[1].rfind("0.001,fixed,4230,true", 0) == 0);
  CHECK(body[2].rfind("10,armijo,77,true", 0) == 0);
  CHECK(body[3].rfind("10,fixed,77,true", 0) == 0);
  CHECK(text.find("\r\n") == std::string::npos);  // LF endings
  CHECK(text.find("-0.636514168294813") != std::string::npos);
  CHECK(text.find("-0.69999999999999996") != std::string::npos);
}

TEST_CASE("iteration CSV") {
  IterationLog log;
  log.initial_loglik = -0.6931471805599453;
  log.initial_residual = 0.23570226039551584;
  log.records.push_back({1, 1.0, -0.64, 0.01, 2, 0.2});
  log.termination = Termination::converged;
  const auto path = temp_file("iters.csv");
  write_iteration_csv(path.string(), log);
  const std::string text = slurp(path);
  CHECK(text.rfind("k,t,loglik,residual,backtracks,distance\n", 0) == 0);
  CHECK(text.find("\n0,nan,") != std::string::npos);
  CHECK(text.find("\n1,1,") != std::string::npos);
}

TEST_CASE("numbers round trip at full precision") {
  // seventeen significant digits survive the write/read cycle exactly
  ComplexMatrix m(1, 1);
  m(0, 0) = Complex(0.1234567890123456789, -1.0 / 3.0);
  const auto path = temp_file("precision.json");
  nlohmann::json j;
  j["rho"] = matrix_to_json(m);
  j["loglik"] = -0.636514168294813;
  j["iterations"] = 1;
  j["termination"] = "converged";
  std::ofstream(path) << j.dump();
  const ResultPayload loaded = load_result(path.string());
  CHECK(loaded.rho(0, 0) == m(0, 0));
}

}  // TEST_SUITE
