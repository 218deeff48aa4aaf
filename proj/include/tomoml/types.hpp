#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace tomoml {

using Real = double;
using Complex = std::complex<double>;
using Index = Eigen::Index;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Validation tolerances and solver defaults, shared by the library and the
// test suites so a single change moves both.
struct NumericPolicy {
  static constexpr Real hermitian_defect = 1e-12;
  static constexpr Real eigen_reconstruction = 1e-10;
  static constexpr Real psd_slack = 1e-10;
  static constexpr Real unit_trace = 1e-12;
  static constexpr Real povm_completeness = 1e-10;
  static constexpr Real unit_norm = 1e-12;
  static constexpr Real frequency_sum = 1e-12;
  static constexpr Real count_integrality = 1e-9;
  static constexpr Real traceless_direction = 1e-10;
  static constexpr Real cycle_revisit = 1e-10;
  static constexpr Real condition_limit = 1e12;
  static constexpr Real probability_floor = 1e-300;
  static constexpr Real tol_iterate = 1e-7;
  static constexpr Real tol_stationarity = 1e-8;
  static constexpr long max_iterations = 100000;
};

// A positive-frequency outcome has (numerically) zero predicted probability:
// the point sits on a face of the cone that the data forbids.
class BoundaryLikelihoodError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tomoml
