#include "tomoml/quantum.hpp"

#include <cmath>
#include <sstream>

namespace tomoml {

DensityMatrix::DensityMatrix(HermitianMatrix op) : op_(std::move(op)) {
  const Real tr = trace(op_);
  if (std::abs(tr - 1.0) > NumericPolicy::unit_trace) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " deviates from 1 by more than "
       << NumericPolicy::unit_trace;
    throw std::invalid_argument(os.str());
  }
  const Real lo = min_eigenvalue(op_);
  if (lo < -NumericPolicy::psd_slack) {
    std::ostringstream os;
    os << "DensityMatrix: minimum eigenvalue " << lo << " below -"
       << NumericPolicy::psd_slack;
    throw std::invalid_argument(os.str());
  }
}

PureState::PureState(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw std::invalid_argument("PureState: empty amplitude vector");
  }
  const Real norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > NumericPolicy::unit_norm) {
    std::ostringstream os;
    os << "PureState: norm " << norm << " deviates from 1 by more than "
       << NumericPolicy::unit_norm;
    throw std::invalid_argument(os.str());
  }
}

Povm::Povm(std::vector<HermitianMatrix> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) {
    throw std::invalid_argument("Povm: needs at least one effect");
  }
  const Index d = effects_.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    if (effects_[i].dim() != d) {
      throw std::invalid_argument("Povm: effects have mixed dimensions");
    }
    const Real lo = min_eigenvalue(effects_[i]);
    if (lo < -NumericPolicy::psd_slack) {
      std::ostringstream os;
      os << "Povm: effect " << i << " has minimum eigenvalue " << lo
         << " below -" << NumericPolicy::psd_slack;
      throw std::invalid_argument(os.str());
    }
    sum += effects_[i].mat();
  }
  const Real defect =
      (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > NumericPolicy::povm_completeness) {
    std::ostringstream os;
    os << "Povm: effects sum deviates from identity by " << defect
       << " (entrywise), tolerance " << NumericPolicy::povm_completeness;
    throw std::invalid_argument(os.str());
  }
}

Dataset::Dataset(RealVector frequencies, std::optional<Real> total_count)
    : frequencies_(std::move(frequencies)), total_count_(total_count) {
  if (frequencies_.size() < 1) {
    throw std::invalid_argument("Dataset: empty frequency vector");
  }
  if (!frequencies_.allFinite()) {
    throw std::invalid_argument("Dataset: frequencies must be finite");
  }
  if (frequencies_.minCoeff() < 0.0) {
    throw std::invalid_argument("Dataset: frequencies must be nonnegative");
  }
  const Real sum = frequencies_.sum();
  if (std::abs(sum - 1.0) > NumericPolicy::frequency_sum) {
    std::ostringstream os;
    os << "Dataset: frequencies sum to " << sum << ", expected 1 within "
       << NumericPolicy::frequency_sum;
    throw std::invalid_argument(os.str());
  }
  if (total_count_) {
    const Real n = *total_count_;
    if (!(n >= 1.0) || std::abs(n - std::round(n)) > NumericPolicy::count_integrality) {
      throw std::invalid_argument("Dataset: total count must be a positive integer");
    }
    for (Index i = 0; i < frequencies_.size(); ++i) {
      const Real c = n * frequencies_(i);
      if (std::abs(c - std::round(c)) > NumericPolicy::count_integrality) {
        std::ostringstream os;
        os << "Dataset: frequency " << i << " times total count " << n
           << " is not an integer (got " << c << ")";
        throw std::invalid_argument(os.str());
      }
    }
  }
}

Dataset Dataset::from_counts(const RealVector& counts) {
  if (counts.size() < 1) {
    throw std::invalid_argument("Dataset: empty count vector");
  }
  for (Index i = 0; i < counts.size(); ++i) {
    const Real c = counts(i);
    if (!(c >= 0.0) || std::abs(c - std::round(c)) > NumericPolicy::count_integrality) {
      throw std::invalid_argument("Dataset: counts must be nonnegative integers");
    }
  }
  const Real n = counts.sum();
  if (n < 1.0) {
    throw std::invalid_argument("Dataset: counts must sum to at least 1");
  }
  return Dataset(counts / n, n);
}

RealVector born_probabilities(const DensityMatrix& rho, const Povm& povm) {
  if (rho.dim() != povm.dim()) {
    throw std::invalid_argument("born_probabilities: dimension mismatch");
  }
  RealVector p(povm.size());
  for (Index i = 0; i < povm.size(); ++i) {
    p(i) = inner(povm.effect(i), rho.op());
  }
  return p.cwiseMax(0.0).cwiseMin(1.0);
}

DensityMatrix maximally_mixed(Index dim) {
  if (dim < 1) {
    throw std::invalid_argument("maximally_mixed: dimension must be at least 1");
  }
  return DensityMatrix(hermitianized(
      ComplexMatrix::Identity(dim, dim) / static_cast<Real>(dim)));
}

DensityMatrix from_pure(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(hermitianized(a * a.adjoint()));
}

PureState w_state(int qubits) {
  if (qubits < 2) {
    throw std::invalid_argument("w_state: needs at least 2 qubits");
  }
  if (qubits > 20) {
    throw std::invalid_argument("w_state: qubit count out of range");
  }
  const Index d = Index(1) << qubits;
  ComplexVector amps = ComplexVector::Zero(d);
  const Real a = 1.0 / std::sqrt(static_cast<Real>(qubits));
  for (int q = 0; q < qubits; ++q) {
    amps(Index(1) << q) = a;
  }
  return PureState(std::move(amps));
}

Real fidelity_with_pure(const DensityMatrix& rho, const PureState& psi) {
  if (rho.dim() != psi.dim()) {
    throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
  }
  const Real f =
      (psi.amplitudes().adjoint() * rho.mat() * psi.amplitudes())(0).real();
  return std::min(1.0, std::max(0.0, f));
}

Real purity(const DensityMatrix& rho) {
  return (rho.mat() * rho.mat()).trace().real();
}

}  // namespace tomoml
