#pragma once

#include <cmath>
#include <vector>

#include "osar/random.hpp"
#include "osar/solver.hpp"

namespace osar::testing {

inline ComplexMatrix random_complex(Rng& rng, Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal(1.0);
  return m;
}

inline ComplexVector random_complex(Rng& rng, Index n) {
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.complex_normal(1.0);
  return v;
}

inline RealVector random_real(Rng& rng, Index n) {
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

// Well-conditioned Hermitian PD covariance: B B^H / n + I.
inline ComplexMatrix random_covariance(Rng& rng, Index n) {
  const ComplexMatrix b = random_complex(rng, n, n);
  ComplexMatrix r = b * b.adjoint() / static_cast<double>(n);
  r += ComplexMatrix::Identity(n, n);
  return (r + r.adjoint()) / 2.0;
}

// A pulse with random G and d; odd pulses get a full covariance so both
// noise models are exercised.
inline PulseMeasurement random_pulse(Rng& rng, Index n_r, Index atoms, bool full_covariance) {
  PulseMeasurement p;
  p.g = random_complex(rng, n_r, atoms);
  p.d = random_complex(rng, n_r);
  p.noise = full_covariance ? NoiseCovariance::full(random_covariance(rng, n_r))
                            : NoiseCovariance::scalar(0.5 + rng.uniform());
  return p;
}

inline std::vector<PulseMeasurement> random_history(Rng& rng, int pulses, Index n_r, Index atoms) {
  std::vector<PulseMeasurement> out;
  for (int k = 0; k < pulses; ++k) out.push_back(random_pulse(rng, n_r, atoms, k % 2 == 1));
  return out;
}

inline SufficientStatistics fold(const std::vector<PulseMeasurement>& pulses, Index atoms,
                                 double l_floor = 1e-12) {
  SufficientStatistics s = SufficientStatistics::empty(atoms, l_floor);
  for (const auto& p : pulses) accumulate(s, p);
  return s;
}

// Scalar-loop reference for Re sum_k G_k^H R_k^{-1} (G_k c - d_k).
inline RealVector gradient_oracle(const std::vector<PulseMeasurement>& pulses, const RealVector& c) {
  RealVector g = RealVector::Zero(c.size());
  for (const auto& p : pulses) {
    ComplexVector r(p.d.size());
    for (Index i = 0; i < p.g.rows(); ++i) {
      Complex acc = -p.d[i];
      for (Index j = 0; j < p.g.cols(); ++j) acc += p.g(i, j) * c[j];
      r[i] = acc;
    }
    const ComplexVector w = p.noise.solve(r);
    for (Index j = 0; j < p.g.cols(); ++j) {
      Complex acc = 0.0;
      for (Index i = 0; i < p.g.rows(); ++i) acc += std::conj(p.g(i, j)) * w[i];
      g[j] += acc.real();
    }
  }
  return g;
}

inline double relative_error(const RealVector& a, const RealVector& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

}  // namespace osar::testing
