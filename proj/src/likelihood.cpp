#include "tomoml/likelihood.hpp"

#include <cmath>
#include <sstream>

namespace tomoml {

ObjectiveContext::ObjectiveContext(Povm povm, Dataset data, Real p_floor)
    : povm_(std::move(povm)), data_(std::move(data)), p_floor_(p_floor) {
  if (povm_.size() != data_.size()) {
    std::ostringstream os;
    os << "ObjectiveContext: " << povm_.size() << " effects vs "
       << data_.size() << " frequencies";
    throw std::invalid_argument(os.str());
  }
  if (!(p_floor_ > 0.0) || !std::isfinite(p_floor_)) {
    throw std::invalid_argument("ObjectiveContext: p_floor must be positive");
  }
  for (Index i = 0; i < data_.size(); ++i) {
    if (data_.frequency(i) > 0.0) {
      support_.push_back(i);
    }
  }
  if (support_.empty()) {
    throw std::invalid_argument("ObjectiveContext: all frequencies are zero");
  }
}

namespace {

RealVector clamped_probabilities(const ObjectiveContext& ctx,
                                 const ComplexMatrix& op) {
  if (op.rows() != ctx.dim() || op.cols() != ctx.dim()) {
    throw std::invalid_argument("likelihood: dimension mismatch");
  }
  RealVector p(ctx.size());
  for (Index i = 0; i < ctx.size(); ++i) {
    p(i) = ctx.povm().effect(i).mat().cwiseProduct(op.conjugate()).sum().real();
  }
  return p.cwiseMax(0.0).cwiseMin(1.0);
}

void check_floor(const ObjectiveContext& ctx, const RealVector& p) {
  for (Index i : ctx.support()) {
    if (p(i) <= ctx.p_floor()) {
      std::ostringstream os;
      os << "outcome " << i << " has frequency " << ctx.data().frequency(i)
         << " but predicted probability " << p(i) << " at or below the floor "
         << ctx.p_floor();
      throw BoundaryLikelihoodError(os.str());
    }
  }
}

}  // namespace

PathEvaluation evaluate_path_point(const ObjectiveContext& ctx,
                                   const ComplexMatrix& op) {
  RealVector p = clamped_probabilities(ctx, op);
  check_floor(ctx, p);
  Real value = 0.0;
  for (Index i : ctx.support()) {
    value += ctx.data().frequency(i) * std::log(p(i));
  }
  return PathEvaluation{std::move(p), value};
}

Real log_likelihood(const ObjectiveContext& ctx, const DensityMatrix& rho) {
  return evaluate_path_point(ctx, rho.mat()).loglik;
}

Real log_likelihood(const ObjectiveContext& ctx, const HermitianMatrix& op) {
  return evaluate_path_point(ctx, op.mat()).loglik;
}

ComplexMatrix gradient_matrix(const ObjectiveContext& ctx,
                              const RealVector& probabilities) {
  const Index d = ctx.dim();
  ComplexMatrix r = ComplexMatrix::Zero(d, d);
  for (Index i : ctx.support()) {
    r += (ctx.data().frequency(i) / probabilities(i)) *
         ctx.povm().effect(i).mat();
  }
  return r;
}

HermitianMatrix gradient(const ObjectiveContext& ctx, const DensityMatrix& rho) {
  RealVector p = clamped_probabilities(ctx, rho.mat());
  check_floor(ctx, p);
  return hermitianized(gradient_matrix(ctx, p));
}

StationarityReport stationarity(const ObjectiveContext& ctx,
                                const DensityMatrix& rho) {
  RealVector p = clamped_probabilities(ctx, rho.mat());
  check_floor(ctx, p);
  const ComplexMatrix r = gradient_matrix(ctx, p);
  const ComplexMatrix r_rho = r * rho.mat();
  const ComplexMatrix rrr = r_rho * r;
  StationarityReport report;
  report.residual_extremal = (r_rho - rho.mat()).norm();
  report.residual_rrr = (rrr - rho.mat()).norm();
  report.trace_r_rho = r_rho.trace().real();
  report.trace_rrr = rrr.trace().real();
  return report;
}

Real directional_derivative(const ObjectiveContext& ctx,
                            const DensityMatrix& rho,
                            const HermitianMatrix& direction) {
  if (direction.dim() != rho.dim()) {
    throw std::invalid_argument("directional_derivative: dimension mismatch");
  }
  const Real tr = trace(direction);
  if (std::abs(tr) > NumericPolicy::traceless_direction) {
    std::ostringstream os;
    os << "directional_derivative: direction trace " << tr
       << " leaves the unit-trace affine space";
    throw std::invalid_argument(os.str());
  }
  return inner(gradient(ctx, rho), direction);
}

}  // namespace tomoml
