#include "tomoml/random_instances.hpp"

#include <cmath>
#include <vector>

namespace tomoml {

Real InstanceRng::uniform() {
  return static_cast<Real>(eng_() >> 11) * 0x1.0p-53;
}

Real InstanceRng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const Real u1 = 1.0 - uniform();  // (0, 1]
  const Real u2 = uniform();
  const Real r = std::sqrt(-2.0 * std::log(u1));
  const Real a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

ComplexMatrix InstanceRng::gaussian_matrix(Index d) {
  ComplexMatrix m(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      m(i, j) = Complex(gaussian(), gaussian());
    }
  }
  return m;
}

HermitianMatrix InstanceRng::hermitian(Index d, Real scale) {
  const ComplexMatrix g = gaussian_matrix(d);
  return hermitianized(0.5 * scale * (g + g.adjoint()));
}

HermitianMatrix InstanceRng::traceless_hermitian(Index d) {
  HermitianMatrix h = hermitian(d);
  const Real shift = trace(h) / static_cast<Real>(d);
  return hermitianized(h.mat() -
                       shift * ComplexMatrix::Identity(d, d));
}

DensityMatrix InstanceRng::density(Index d, Real mix) {
  const ComplexMatrix g = gaussian_matrix(d);
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  w = (1.0 - mix) * w + (mix / static_cast<Real>(d)) * ComplexMatrix::Identity(d, d);
  return DensityMatrix(hermitianized(w));
}

Povm InstanceRng::povm(Index d, Index effects) {
  if (effects < 2) {
    throw std::invalid_argument("InstanceRng::povm: need at least 2 effects");
  }
  std::vector<ComplexMatrix> raw;
  raw.reserve(static_cast<std::size_t>(effects));
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i + 1 < effects; ++i) {
    const ComplexMatrix g = gaussian_matrix(d);
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  // whiten so the partial sum is strictly inside the identity, then absorb
  // the residue into the last effect
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sum);
  const RealVector inv_sqrt =
      (es.eigenvalues().array() + 0.25 * es.eigenvalues().maxCoeff())
          .rsqrt()
          .matrix();
  const ComplexMatrix t =
      es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
  std::vector<HermitianMatrix> out;
  out.reserve(static_cast<std::size_t>(effects));
  ComplexMatrix partial = ComplexMatrix::Zero(d, d);
  for (const auto& a : raw) {
    ComplexMatrix e = t * a * t;
    partial += e;
    out.push_back(hermitianized(std::move(e)));
  }
  out.push_back(hermitianized(ComplexMatrix::Identity(d, d) - partial));
  return Povm(std::move(out));
}

Dataset InstanceRng::dataset(Index m, bool allow_zeros) {
  RealVector f(m);
  for (Index i = 0; i < m; ++i) {
    f(i) = -std::log(1.0 - uniform());
    if (allow_zeros && uniform() < 0.25) {
      f(i) = 0.0;
    }
  }
  if (f.sum() <= 0.0) {
    f.setConstant(1.0);
  }
  f /= f.sum();
  return Dataset(std::move(f));
}

ObjectiveContext InstanceRng::context(Index d, bool allow_zeros) {
  const Index m = d * d + d;
  Povm p = povm(d, m);
  Dataset f = dataset(m, allow_zeros);
  return ObjectiveContext(std::move(p), std::move(f));
}

ObjectiveContext InstanceRng::stationary_context_for(const DensityMatrix& rho) {
  const Index d = rho.dim();
  Povm p = povm(d, d * d + d);
  RealVector f = born_probabilities(rho, p);
  f /= f.sum();
  return ObjectiveContext(std::move(p), Dataset(std::move(f)));
}

}  // namespace tomoml
