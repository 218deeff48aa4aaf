#pragma once

#include <vector>

#include "tomoml/quantum.hpp"

namespace tomoml {

/// Measurement model plus observed frequencies, as consumed by the
/// log-likelihood F(rho) = sum_i f_i log Tr(E_i rho).
///
/// Outcomes with f_i = 0 contribute exactly nothing to F and to its gradient
/// (the 0*log p == 0 convention); they are dropped from the support up front.
/// An outcome with f_i > 0 whose predicted probability falls to p_floor or
/// below raises BoundaryLikelihoodError instead of being clamped.
class ObjectiveContext {
 public:
  ObjectiveContext(Povm povm, Dataset data,
                   Real p_floor = NumericPolicy::probability_floor);

  const Povm& povm() const { return povm_; }
  const Dataset& data() const { return data_; }
  Real p_floor() const { return p_floor_; }
  Index dim() const { return povm_.dim(); }
  Index size() const { return povm_.size(); }
  const std::vector<Index>& support() const { return support_; }

 private:
  Povm povm_;
  Dataset data_;
  Real p_floor_;
  std::vector<Index> support_;
};

struct StationarityReport {
  Real residual_extremal;  // || R(rho) rho - rho ||_F
  Real residual_rrr;       // || R(rho) rho R(rho) - rho ||_F
  Real trace_r_rho;        // Tr(R(rho) rho)
  Real trace_rrr;          // Tr(R(rho) rho R(rho))
};

struct PathEvaluation {
  RealVector probabilities;  // clamped into [0, 1]
  Real loglik;
};

/// Probabilities and log-likelihood at a point of a search path. The operator
/// is not validated against the density-matrix constraints; only the
/// probability floor is enforced.
PathEvaluation evaluate_path_point(const ObjectiveContext& ctx,
                                   const ComplexMatrix& op);

Real log_likelihood(const ObjectiveContext& ctx, const DensityMatrix& rho);
Real log_likelihood(const ObjectiveContext& ctx, const HermitianMatrix& op);

/// Gradient R(p) = sum_{i in support} (f_i / p_i) E_i as a raw matrix; the
/// gradient depends on rho only through the outcome probabilities.
ComplexMatrix gradient_matrix(const ObjectiveContext& ctx,
                              const RealVector& probabilities);

/// R(rho), Hermitian and PSD.
HermitianMatrix gradient(const ObjectiveContext& ctx, const DensityMatrix& rho);

StationarityReport stationarity(const ObjectiveContext& ctx,
                                const DensityMatrix& rho);

/// Tr(R(rho) D) for a traceless Hermitian direction D (trace within
/// NumericPolicy::traceless_direction, so the direction stays inside the
/// unit-trace affine space).
Real directional_derivative(const ObjectiveContext& ctx,
                            const DensityMatrix& rho,
                            const HermitianMatrix& direction);

}  // namespace tomoml
