#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Cholesky>

#include "osar/dictionary.hpp"
#include "osar/linalg.hpp"
#include "osar/types.hpp"

namespace osar {

/// Per-pulse noise covariance R, either sigma^2 I or a full Hermitian PD matrix.
///
/// The full form keeps a Cholesky factor R = L L^H; whitening applies L^{-1},
/// which satisfies (L^{-1} X)^H (L^{-1} X) = X^H R^{-1} X and has the same
/// spectral norm as R^{-1/2} X.
class NoiseCovariance {
 public:
  static NoiseCovariance scalar(double variance);
  static NoiseCovariance full(const ComplexMatrix& r);

  bool is_scalar() const { return !factor_.has_value(); }
  double variance() const { return variance_; }

  ComplexMatrix whiten(const ComplexMatrix& x) const;
  ComplexVector whiten(const ComplexVector& x) const;
  /// R^{-1} x.
  ComplexVector solve(const ComplexVector& x) const;

 private:
  NoiseCovariance() = default;
  double variance_ = 1.0;
  std::optional<Eigen::LLT<ComplexMatrix>> factor_;
};

/// One pulse: data d (N_r), operator G = F H (N_r x M) and its noise model.
struct PulseMeasurement {
  ComplexVector d;
  ComplexMatrix g;
  NoiseCovariance noise = NoiseCovariance::scalar(1.0);
};

/// Running (A_n, b_n, L_n) summarizing every pulse seen so far.
struct SufficientStatistics {
  ComplexMatrix a;  // M x M Hermitian PSD
  ComplexVector b;  // M
  double lipschitz = 0.0;
  std::int64_t pulse_count = 0;
  std::int64_t power_iteration_fallbacks = 0;

  static SufficientStatistics empty(Index atoms, double l_floor);
  Index atoms() const { return b.size(); }
};

struct SolverConfig {
  double lambda = 1.0;
  int inner_steps = 20;
  double l_floor = 1e-12;
  // Ablation switch: restart momentum at t = 1 on every pulse.
  bool reset_momentum_each_pulse = false;
  PowerIterationOptions power_iteration{};

  void validate() const;
};

struct SolverState {
  RealVector c_hat;
  double momentum_t = 1.0;
  bool started = false;  // false until the first online_fista_pulse call
  SufficientStatistics stats;

  static SolverState initial(Index atoms, const SolverConfig& cfg);
};

/// A += G^H R^{-1} G, b += G^H R^{-1} d, L += ||R^{-1/2} G||_2^2.
/// The pulse is not retained.
void accumulate(SufficientStatistics& stats, const PulseMeasurement& pulse,
                const PowerIterationOptions& opts = {});

/// Runs cfg.inner_steps FISTA iterations on the current statistics, warm
/// started from c_hat and resuming the stored momentum. Step tau = 1/L_n;
/// the shrinkage threshold is lambda * tau. Throws StateError before any
/// pulse has been accumulated.
void online_fista_pulse(SolverState& state, const SolverConfig& cfg);

double soft_threshold(double u, double alpha);
Complex soft_threshold(Complex u, double alpha);
RealVector soft_threshold(const RealVector& u, double alpha);
ComplexVector soft_threshold(const ComplexVector& u, double alpha);

using PulseHistory = std::span<const PulseMeasurement>;

/// 1/2 sum_k (d_k - G_k c)^H R_k^{-1} (d_k - G_k c) + lambda ||c||_1.
/// Throws NumericalError when the quadratic term has a non-negligible
/// imaginary part.
double batch_objective(const RealVector& c, PulseHistory pulses, double lambda);

/// Re sum_k G_k^H R_k^{-1} (G_k c - d_k).
RealVector batch_gradient(const RealVector& c, PulseHistory pulses);

/// Re(A c - b): gradient of the smooth term evaluated from sufficient statistics.
RealVector statistics_gradient(const SufficientStatistics& stats, const RealVector& c);

/// Smooth term recovered from statistics, up to the constant 1/2 sum d^H R^{-1} d.
double statistics_objective(const SufficientStatistics& stats, const RealVector& c, double lambda,
                            double data_energy);

/// Classical FISTA from zero with step 1/||sum G^H R^{-1} G||_2. Accepts
/// lambda = 0 (plain weighted least squares).
RealVector batch_fista(PulseHistory pulses, const SolverConfig& cfg, int iterations);

/// H c_hat.
RealVector reconstruct(const SolverState& state, const EdgeletDictionary& h);

}  // namespace osar
