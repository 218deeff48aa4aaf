#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tomoml/quantum.hpp"

namespace tomoml {

struct RngSeed {
  std::uint64_t value = 0;
};

/// Ready-to-solve experiment: measurement model, data, and (when meaningful)
/// the state the data came from.
struct ExperimentSpec {
  std::string name;
  Index dim;
  Povm povm;
  Dataset dataset;
  std::optional<DensityMatrix> truth;
};

/// Qubit experiment on which the undamped R-rho-R iteration cycles instead of
/// converging: projective {|0><0|, |1><1|} measurement with outcome counts
/// (1, 2) out of three shots. The likelihood depends only on diag(rho), so no
/// unique full-matrix maximizer exists and no truth state is recorded.
ExperimentSpec counterexample_spec();

/// Uniformly weighted Pauli-basis POVM on n qubits: for each of the 3^n
/// X/Y/Z basis choices and each of the 2^n outcomes, the effect is
/// (1/3^n) times the rank-one projector onto the outcome's tensor
/// eigenvector. Effects are ordered setting-major
/// (index = setting * 2^n + outcome) with settings enumerated
/// lexicographically (X < Y < Z, qubit 1 most significant) and outcome bits
/// big-endian (qubit 1 = most significant bit).
Povm pauli_povm(int qubits);

/// Exact Born-rule frequencies of rho under the measurement (renormalized so
/// they sum to 1 exactly up to roundoff); no total count.
Dataset noiseless_dataset(const DensityMatrix& rho, const Povm& povm);

/// Multinomial draw of `shots` outcomes from the Born probabilities of rho.
/// Uses inverse-CDF sampling driven by mt19937_64 ("mt19937_64-invcdf-v1"),
/// so datasets are reproducible across platforms for a fixed seed.
Dataset sample_dataset(const DensityMatrix& rho, const Povm& povm, long shots,
                       RngSeed seed);

/// Multinomial draw directly from a given outcome distribution.
Dataset sample_from_frequencies(const RealVector& probabilities, long shots,
                                RngSeed seed);

/// Noiseless n-qubit W-state experiment under the Pauli-basis POVM.
ExperimentSpec w_state_spec(int qubits);

/// Name of the sampling algorithm recorded in dataset metadata.
std::string sampler_version();

}  // namespace tomoml
