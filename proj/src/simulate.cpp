#include "tomoml/simulate.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace tomoml {

ExperimentSpec counterexample_spec() {
  ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 2);
  e1(1, 1) = 1.0;
  Povm povm({HermitianMatrix(e0), HermitianMatrix(e1)});
  RealVector f(2);
  f << 1.0 / 3.0, 2.0 / 3.0;
  Dataset dataset(f, 3.0);
  return ExperimentSpec{"counterexample", 2, std::move(povm),
                        std::move(dataset), std::nullopt};
}

namespace {

// Eigenvectors of the three Pauli operators; row [basis][outcome].
ComplexVector pauli_eigenvector(int basis, int outcome) {
  const Real s = 1.0 / std::sqrt(2.0);
  ComplexVector v(2);
  switch (basis) {
    case 0:  // X
      v << Complex(s, 0), (outcome == 0 ? Complex(s, 0) : Complex(-s, 0));
      break;
    case 1:  // Y
      v << Complex(s, 0), (outcome == 0 ? Complex(0, s) : Complex(0, -s));
      break;
    default:  // Z
      v << Complex(outcome == 0 ? 1 : 0, 0), Complex(outcome == 0 ? 0 : 1, 0);
      break;
  }
  return v;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

}  // namespace

Povm pauli_povm(int qubits) {
  if (qubits < 1 || qubits > 4) {
    throw std::invalid_argument("pauli_povm: qubit count must be in [1, 4]");
  }
  const Index settings = static_cast<Index>(std::pow(3, qubits));
  const Index outcomes = Index(1) << qubits;
  const Real weight = 1.0 / static_cast<Real>(settings);
  std::vector<HermitianMatrix> effects;
  effects.reserve(static_cast<std::size_t>(settings * outcomes));
  for (Index s = 0; s < settings; ++s) {
    // base-3 digits of the setting, qubit 1 = most significant
    std::vector<int> digits(static_cast<std::size_t>(qubits));
    Index rest = s;
    for (int q = qubits - 1; q >= 0; --q) {
      digits[static_cast<std::size_t>(q)] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    for (Index b = 0; b < outcomes; ++b) {
      ComplexVector ket(1);
      ket(0) = Complex(1, 0);
      for (int q = 0; q < qubits; ++q) {
        const int bit = static_cast<int>((b >> (qubits - 1 - q)) & 1);
        ket = kron(ket, pauli_eigenvector(digits[static_cast<std::size_t>(q)], bit));
      }
      effects.push_back(hermitianized(weight * (ket * ket.adjoint())));
    }
  }
  return Povm(std::move(effects));
}

Dataset noiseless_dataset(const DensityMatrix& rho, const Povm& povm) {
  RealVector f = born_probabilities(rho, povm);
  f /= f.sum();
  return Dataset(std::move(f), std::nullopt);
}

Dataset sample_from_frequencies(const RealVector& probabilities, long shots,
                                RngSeed seed) {
  if (shots < 1) {
    throw std::invalid_argument("sample_from_frequencies: shots must be >= 1");
  }
  if (probabilities.minCoeff() < 0.0) {
    throw std::invalid_argument(
        "sample_from_frequencies: probabilities must be nonnegative");
  }
  const Index m = probabilities.size();
  RealVector cum(m);
  Real acc = 0.0;
  for (Index i = 0; i < m; ++i) {
    acc += probabilities(i);
    cum(i) = acc;
  }
  std::mt19937_64 eng(seed.value);
  RealVector counts = RealVector::Zero(m);
  for (long shot = 0; shot < shots; ++shot) {
    // uniform in [0, 1) built from the high 53 bits, identical on every
    // platform for a fixed seed
    const Real u = static_cast<Real>(eng() >> 11) * 0x1.0p-53;
    const Real target = u * acc;
    Index lo = 0;
    Index hi = m - 1;
    while (lo < hi) {
      const Index mid = (lo + hi) / 2;
      if (cum(mid) > target) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    counts(lo) += 1.0;
  }
  return Dataset(counts / static_cast<Real>(shots), static_cast<Real>(shots));
}

Dataset sample_dataset(const DensityMatrix& rho, const Povm& povm, long shots,
                       RngSeed seed) {
  return sample_from_frequencies(born_probabilities(rho, povm), shots, seed);
}

ExperimentSpec w_state_spec(int qubits) {
  Povm povm = pauli_povm(qubits);
  DensityMatrix truth = from_pure(w_state(qubits));
  Dataset dataset = noiseless_dataset(truth, povm);
  return ExperimentSpec{"w-state", truth.dim(), std::move(povm),
                        std::move(dataset), std::move(truth)};
}

std::string sampler_version() { return "mt19937_64-invcdf-v1"; }

}  // namespace tomoml
