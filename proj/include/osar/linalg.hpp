#pragma once

#include "osar/types.hpp"

namespace osar {

struct PowerIterationOptions {
  double relative_tolerance = 1e-6;
  int max_iterations = 500;
};

/// Estimate of the largest eigenvalue of a Hermitian PSD operator.
///
/// `value` is the Rayleigh quotient plus the eigen-residual norm, capped by the
/// Frobenius bound, so it sits at or above the true eigenvalue once the
/// iteration has locked on. When the iteration does not converge, `value` is
/// the Frobenius bound and `converged` is false.
struct SpectralEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// ||X||_2^2 = lambda_max(X^H X), using only products with X and X^H.
SpectralEstimate spectral_norm_squared(const ComplexMatrix& x,
                                       const PowerIterationOptions& opts = {});

/// lambda_max of a Hermitian positive semidefinite matrix.
SpectralEstimate hermitian_max_eigenvalue(const ComplexMatrix& a,
                                          const PowerIterationOptions& opts = {});

/// Makes `a` exactly Hermitian: averages mirrored entries and zeroes the
/// imaginary part of the diagonal.
void make_hermitian(ComplexMatrix& a);

}  // namespace osar
