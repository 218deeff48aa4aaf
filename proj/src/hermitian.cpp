#include "tomoml/hermitian.hpp"

#include <sstream>

namespace tomoml {

namespace {

// Exact symmetrization: (m + m')/2 entrywise, then force the diagonal
// imaginary parts to zero so the stored invariant is bit-exact.
ComplexMatrix symmetrize(const ComplexMatrix& m) {
  ComplexMatrix s = (0.5 * (m + m.adjoint())).eval();
  for (Index i = 0; i < s.rows(); ++i) {
    s(i, i) = Complex(s(i, i).real(), 0.0);
  }
  return s;
}

void require_square_positive(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix of positive dimension, got "
       << m.rows() << "x" << m.cols();
    throw std::invalid_argument(os.str());
  }
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim()
       << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& raw) {
  require_square_positive(raw, "HermitianMatrix");
  if (!raw.allFinite()) {
    throw std::invalid_argument("HermitianMatrix: entries must be finite");
  }
  const Real defect = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  if (defect > NumericPolicy::hermitian_defect) {
    std::ostringstream os;
    os << "HermitianMatrix: Hermitian defect " << defect << " exceeds "
       << NumericPolicy::hermitian_defect;
    throw std::invalid_argument(os.str());
  }
  mat_ = symmetrize(raw);
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, AlreadyHermitian)
    : mat_(std::move(m)) {}

HermitianMatrix hermitianized(ComplexMatrix m) {
  require_square_positive(m, "hermitianized");
  return HermitianMatrix(symmetrize(m), HermitianMatrix::AlreadyHermitian{});
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  if (dim < 1) {
    throw std::invalid_argument("identity: dimension must be at least 1");
  }
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim),
                         AlreadyHermitian{});
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  if (dim < 1) {
    throw std::invalid_argument("zero: dimension must be at least 1");
  }
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim), AlreadyHermitian{});
}

HermitianMatrix identity(Index dim) { return HermitianMatrix::identity(dim); }

HermitianMatrix add_scaled(const HermitianMatrix& a, const HermitianMatrix& b,
                           Real alpha, Real beta) {
  require_same_dim(a, b, "add_scaled");
  return hermitianized(alpha * a.mat() + beta * b.mat());
}

HermitianMatrix sandwich(const HermitianMatrix& m, const HermitianMatrix& rho) {
  require_same_dim(m, rho, "sandwich");
  return hermitianized(m.mat() * rho.mat() * m.mat());
}

HermitianMatrix symmetrized_product(const HermitianMatrix& a,
                                    const HermitianMatrix& b) {
  require_same_dim(a, b, "symmetrized_product");
  const ComplexMatrix ab = a.mat() * b.mat();
  return hermitianized(0.5 * (ab + ab.adjoint()));
}

Real trace(const HermitianMatrix& a) { return a.mat().trace().real(); }

Real inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "inner");
  // Tr(AB) = sum_ij A_ij conj(B_ij) for Hermitian B.
  return a.mat().cwiseProduct(b.mat().conjugate()).sum().real();
}

HermitianEigen eigen_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.mat());
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigen_hermitian: eigensolver did not converge");
  }
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

Real min_eigenvalue(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.mat(),
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("min_eigenvalue: eigensolver did not converge");
  }
  return solver.eigenvalues()(0);
}

Real frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "frobenius_distance");
  return (a.mat() - b.mat()).norm();
}

}  // namespace tomoml
