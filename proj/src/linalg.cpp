#include "osar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "osar/errors.hpp"
#include "osar/random.hpp"

namespace osar {
namespace {

SpectralEstimate power_iterate(Index dim, const std::function<ComplexVector(const ComplexVector&)>& apply,
                               double frobenius_bound, const PowerIterationOptions& opts) {
  SpectralEstimate est;
  if (dim == 0 || frobenius_bound == 0.0) {
    est.converged = true;
    return est;
  }
  // Fixed pseudo-random start keeps results reproducible and avoids starting
  // orthogonal to the dominant eigenvector of structured matrices.
  Rng rng(0x5eed5eedULL);
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = Complex(rng.uniform() + 0.5, rng.uniform() - 0.5);
  v.normalize();

  double previous = 0.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    ComplexVector w = apply(v);
    const double rayleigh = v.dot(w).real();
    const double w_norm = w.norm();
    est.iterations = it;
    if (w_norm == 0.0) {
      // v lies in the null space; the operator is nonzero so restart is pointless here.
      break;
    }
    if (it > 1 && std::abs(rayleigh - previous) <= opts.relative_tolerance * std::abs(rayleigh)) {
      const double residual = (w - rayleigh * v).norm();
      est.value = std::min(rayleigh + residual, frobenius_bound);
      est.converged = true;
      return est;
    }
    previous = rayleigh;
    v = w / w_norm;
  }
  est.value = frobenius_bound;
  est.converged = false;
  return est;
}

}  // namespace

SpectralEstimate spectral_norm_squared(const ComplexMatrix& x, const PowerIterationOptions& opts) {
  const double frob = x.squaredNorm();
  return power_iterate(
      x.cols(), [&x](const ComplexVector& v) -> ComplexVector { return x.adjoint() * (x * v); },
      frob, opts);
}

SpectralEstimate hermitian_max_eigenvalue(const ComplexMatrix& a, const PowerIterationOptions& opts) {
  if (a.rows() != a.cols()) throw DomainError("hermitian_max_eigenvalue: matrix not square");
  const double frob = a.norm();
  return power_iterate(
      a.rows(), [&a](const ComplexVector& v) -> ComplexVector { return a * v; }, frob, opts);
}

void make_hermitian(ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("make_hermitian: matrix not square");
  const Index n = a.rows();
  for (Index j = 0; j < n; ++j) {
    a(j, j) = Complex(a(j, j).real(), 0.0);
    for (Index i = j + 1; i < n; ++i) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
}

}  // namespace osar
