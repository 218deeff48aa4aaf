#pragma once

#include <cstdint>
#include <random>

#include "tomoml/likelihood.hpp"

namespace tomoml {

/// Seeded generator of random feasible tomography instances, shared by the
/// randomized invariant checks and the test suites.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : eng_(seed) {}

  Real uniform();                       // [0, 1)
  Real gaussian();                      // standard normal (Box-Muller)
  std::uint64_t raw() { return eng_(); }

  ComplexMatrix gaussian_matrix(Index d);
  HermitianMatrix hermitian(Index d, Real scale = 1.0);
  HermitianMatrix traceless_hermitian(Index d);

  /// Strictly interior density matrix: normalized Wishart sample mixed with
  /// (mix) parts of the maximally mixed state.
  DensityMatrix density(Index d, Real mix = 0.1);

  /// POVM of `effects` PSD elements summing to the identity (the last effect
  /// absorbs the completeness residue exactly).
  Povm povm(Index d, Index effects);

  /// Strictly positive frequencies (exponential weights, normalized); when
  /// allow_zeros is set, roughly a quarter of the entries are zeroed first.
  Dataset dataset(Index m, bool allow_zeros = false);

  /// Random POVM with d^2 + d effects plus random frequencies.
  ObjectiveContext context(Index d, bool allow_zeros = false);

  /// Context whose data equals the Born frequencies of `rho`, making `rho`
  /// a stationary point of the likelihood.
  ObjectiveContext stationary_context_for(const DensityMatrix& rho);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  Real spare_ = 0.0;
};

}  // namespace tomoml
