#pragma once

#include "tomoml/types.hpp"

namespace tomoml {

/// Dense complex Hermitian matrix. Construction checks the Hermitian defect
/// (max entry of |A - A'|) against NumericPolicy::hermitian_defect and then
/// symmetrizes exactly, so stored matrices satisfy
/// entry(i,j) == conj(entry(j,i)) bit-for-bit and have real diagonals.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& raw);

  static HermitianMatrix identity(Index dim);
  static HermitianMatrix zero(Index dim);

  Index dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }
  Complex operator()(Index i, Index j) const { return mat_(i, j); }

 private:
  struct AlreadyHermitian {};
  HermitianMatrix(ComplexMatrix m, AlreadyHermitian);
  friend HermitianMatrix hermitianized(ComplexMatrix m);

  ComplexMatrix mat_;
};

/// Wraps a matrix that is Hermitian by construction (sums of Hermitian terms,
/// congruences M X M, ...): symmetrizes exactly, skipping the defect check.
HermitianMatrix hermitianized(ComplexMatrix m);

HermitianMatrix identity(Index dim);

/// alpha * a + beta * b
HermitianMatrix add_scaled(const HermitianMatrix& a, const HermitianMatrix& b,
                           Real alpha, Real beta);

/// m * rho * m
HermitianMatrix sandwich(const HermitianMatrix& m, const HermitianMatrix& rho);

/// (a*b + b*a) / 2
HermitianMatrix symmetrized_product(const HermitianMatrix& a,
                                    const HermitianMatrix& b);

Real trace(const HermitianMatrix& a);

/// Tr(a*b); real for Hermitian arguments.
Real inner(const HermitianMatrix& a, const HermitianMatrix& b);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // unitary, column k pairs with values(k)
};

HermitianEigen eigen_hermitian(const HermitianMatrix& a);

Real min_eigenvalue(const HermitianMatrix& a);

Real frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace tomoml
