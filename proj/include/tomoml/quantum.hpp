#pragma once

#include <optional>
#include <vector>

#include "tomoml/hermitian.hpp"

namespace tomoml {

/// Hermitian, positive semidefinite (within NumericPolicy::psd_slack),
/// unit-trace (within NumericPolicy::unit_trace) operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix op);

  Index dim() const { return op_.dim(); }
  const HermitianMatrix& op() const { return op_; }
  const ComplexMatrix& mat() const { return op_.mat(); }

 private:
  HermitianMatrix op_;
};

/// Normalized state vector (unit Euclidean norm within
/// NumericPolicy::unit_norm).
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

/// Ordered collection of PSD effects summing to the identity
/// (entrywise within NumericPolicy::povm_completeness).
class Povm {
 public:
  explicit Povm(std::vector<HermitianMatrix> effects);

  Index size() const { return static_cast<Index>(effects_.size()); }
  Index dim() const { return effects_.front().dim(); }
  const HermitianMatrix& effect(Index i) const {
    return effects_[static_cast<std::size_t>(i)];
  }
  const std::vector<HermitianMatrix>& effects() const { return effects_; }

 private:
  std::vector<HermitianMatrix> effects_;
};

/// Observed outcome frequencies: nonnegative, summing to 1 within
/// NumericPolicy::frequency_sum. An optional total count records how many
/// shots produced the frequencies; it does not enter the estimation.
class Dataset {
 public:
  explicit Dataset(RealVector frequencies,
                   std::optional<Real> total_count = std::nullopt);

  static Dataset from_counts(const RealVector& counts);

  Index size() const { return frequencies_.size(); }
  Real frequency(Index i) const { return frequencies_(i); }
  const RealVector& frequencies() const { return frequencies_; }
  const std::optional<Real>& total_count() const { return total_count_; }

 private:
  RealVector frequencies_;
  std::optional<Real> total_count_;
};

/// p_i = Tr(E_i rho), clamped into [0, 1].
RealVector born_probabilities(const DensityMatrix& rho, const Povm& povm);

DensityMatrix maximally_mixed(Index dim);

/// Rank-one projector |psi><psi|.
DensityMatrix from_pure(const PureState& psi);

/// n-qubit state with amplitude 1/sqrt(n) on every single-excitation basis
/// vector (qubit 1 maps to the most significant bit of the basis index).
PureState w_state(int qubits);

/// <psi| rho |psi>, clamped into [0, 1].
Real fidelity_with_pure(const DensityMatrix& rho, const PureState& psi);

/// Tr(rho^2)
Real purity(const DensityMatrix& rho);

}  // namespace tomoml
