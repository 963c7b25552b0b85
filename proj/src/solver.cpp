#include "osar/solver.hpp"

#include <cmath>
#include <string>

#include "osar/errors.hpp"

namespace osar {

NoiseCovariance NoiseCovariance::scalar(double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw DomainError("noise variance must be positive and finite");
  NoiseCovariance r;
  r.variance_ = variance;
  return r;
}

NoiseCovariance NoiseCovariance::full(const ComplexMatrix& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0)
    throw DomainError("noise covariance must be a nonempty square matrix");
  if ((cov - cov.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * cov.cwiseAbs().maxCoeff())
    throw DomainError("noise covariance is not Hermitian");
  NoiseCovariance r;
  r.factor_.emplace(cov);
  if (r.factor_->info() != Eigen::Success) throw DomainError("noise covariance is not positive definite");
  const auto& l = r.factor_->matrixL();
  for (Index i = 0; i < cov.rows(); ++i) {
    const double diag = l(i, i).real();
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw DomainError("noise covariance is not positive definite");
  }
  return r;
}

ComplexMatrix NoiseCovariance::whiten(const ComplexMatrix& x) const {
  if (is_scalar()) return x / std::sqrt(variance_);
  if (x.rows() != factor_->rows()) throw DomainError("noise covariance dimension mismatch");
  return factor_->matrixL().solve(x);
}

ComplexVector NoiseCovariance::whiten(const ComplexVector& x) const {
  if (is_scalar()) return x / std::sqrt(variance_);
  if (x.size() != factor_->rows()) throw DomainError("noise covariance dimension mismatch");
  return factor_->matrixL().solve(x);
}

ComplexVector NoiseCovariance::solve(const ComplexVector& x) const {
  if (is_scalar()) return x / variance_;
  if (x.size() != factor_->rows()) throw DomainError("noise covariance dimension mismatch");
  return factor_->solve(x);
}

SufficientStatistics SufficientStatistics::empty(Index atoms, double l_floor) {
  if (atoms < 1) throw DomainError("need at least one atom");
  if (!(l_floor > 0.0)) throw DomainError("l_floor must be positive");
  SufficientStatistics s;
  s.a = ComplexMatrix::Zero(atoms, atoms);
  s.b = ComplexVector::Zero(atoms);
  s.lipschitz = l_floor;
  return s;
}

void SolverConfig::validate() const {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (inner_steps < 1) throw ConfigError("inner_steps must be at least 1");
  if (!(l_floor > 0.0)) throw ConfigError("l_floor must be positive");
}

SolverState SolverState::initial(Index atoms, const SolverConfig& cfg) {
  SolverState s;
  s.c_hat = RealVector::Zero(atoms);
  s.stats = SufficientStatistics::empty(atoms, cfg.l_floor);
  return s;
}

void accumulate(SufficientStatistics& stats, const PulseMeasurement& pulse,
                const PowerIterationOptions& opts) {
  const Index m = stats.atoms();
  if (pulse.g.cols() != m)
    throw DomainError("pulse operator has " + std::to_string(pulse.g.cols()) +
                      " columns, statistics expect " + std::to_string(m));
  if (pulse.d.size() != pulse.g.rows()) throw DomainError("pulse data length does not match G rows");

  const ComplexMatrix w = pulse.noise.whiten(pulse.g);
  const ComplexVector e = pulse.noise.whiten(pulse.d);

  // Increment is made exactly Hermitian before it is added, so A stays
  // exactly Hermitian and repeated increments add without drift.
  ComplexMatrix delta = ComplexMatrix::Zero(m, m);
  delta.selfadjointView<Eigen::Lower>().rankUpdate(w.adjoint());
  for (Index j = 0; j < m; ++j) {
    delta(j, j) = Complex(delta(j, j).real(), 0.0);
    for (Index i = j + 1; i < m; ++i) delta(j, i) = std::conj(delta(i, j));
  }
  stats.a += delta;
  stats.b.noalias() += w.adjoint() * e;

  const SpectralEstimate norm = spectral_norm_squared(w, opts);
  if (!norm.converged) ++stats.power_iteration_fallbacks;
  stats.lipschitz += norm.value;
  ++stats.pulse_count;
}

double soft_threshold(double u, double alpha) {
  const double mag = std::abs(u);
  if (mag <= alpha) return 0.0;
  return std::copysign(mag - alpha, u);
}

Complex soft_threshold(Complex u, double alpha) {
  const double mag = std::abs(u);
  if (mag <= alpha) return {0.0, 0.0};
  return u * ((mag - alpha) / mag);
}

RealVector soft_threshold(const RealVector& u, double alpha) {
  RealVector out(u.size());
  for (Index i = 0; i < u.size(); ++i) out[i] = soft_threshold(u[i], alpha);
  return out;
}

ComplexVector soft_threshold(const ComplexVector& u, double alpha) {
  ComplexVector out(u.size());
  for (Index i = 0; i < u.size(); ++i) out[i] = soft_threshold(u[i], alpha);
  return out;
}

namespace {

// Shared inner loop for the online and batch paths: FISTA on
// 1/2 c^T Re(A) c - Re(b)^T c + lambda ||c||_1 with a fixed step.
template <class GradientFn>
void fista_iterations(RealVector& c, double& t, int steps, double tau, double threshold,
                      GradientFn&& gradient) {
  RealVector c_prev = c;
  RealVector z = c;
  RealVector u(c.size());
  for (int k = 0; k < steps; ++k) {
    u = z - tau * gradient(z);
    for (Index i = 0; i < c.size(); ++i) c[i] = soft_threshold(u[i], threshold);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    z = c + ((t - 1.0) / t_next) * (c - c_prev);
    c_prev = c;
    t = t_next;
  }
}

}  // namespace

void online_fista_pulse(SolverState& state, const SolverConfig& cfg) {
  cfg.validate();
  auto& stats = state.stats;
  if (stats.pulse_count < 1) throw StateError("online_fista_pulse called before any pulse was accumulated");
  if (!(stats.lipschitz > 0.0)) throw StateError("Lipschitz bound must be positive");
  if (state.c_hat.size() != stats.atoms()) throw DomainError("coefficient length does not match statistics");

  if (!state.started || cfg.reset_momentum_each_pulse) state.momentum_t = 1.0;
  state.started = true;

  const double tau = 1.0 / stats.lipschitz;
  const RealMatrix a_re = stats.a.real();
  const RealVector b_re = stats.b.real();
  RealVector g(stats.atoms());
  fista_iterations(state.c_hat, state.momentum_t, cfg.inner_steps, tau, cfg.lambda * tau,
                   [&](const RealVector& z) -> const RealVector& {
                     g.noalias() = a_re * z;
                     g -= b_re;
                     return g;
                   });
}

namespace {

void check_history(const RealVector& c, PulseHistory pulses) {
  for (const auto& p : pulses) {
    if (p.g.cols() != c.size()) throw DomainError("pulse operator width does not match coefficients");
    if (p.d.size() != p.g.rows()) throw DomainError("pulse data length does not match G rows");
  }
}

}  // namespace

double batch_objective(const RealVector& c, PulseHistory pulses, double lambda) {
  check_history(c, pulses);
  const ComplexVector cc = c.cast<Complex>();
  Complex quad{0.0, 0.0};
  for (const auto& p : pulses) {
    const ComplexVector r = p.d - p.g * cc;
    quad += r.dot(p.noise.solve(r));  // r^H R^{-1} r
  }
  if (std::abs(quad.imag()) > 1e-10 * std::max(std::abs(quad.real()), 1e-300))
    throw NumericalError("weighted residual has a non-negligible imaginary part");
  return 0.5 * quad.real() + lambda * c.lpNorm<1>();
}

RealVector batch_gradient(const RealVector& c, PulseHistory pulses) {
  check_history(c, pulses);
  const ComplexVector cc = c.cast<Complex>();
  ComplexVector grad = ComplexVector::Zero(c.size());
  for (const auto& p : pulses) grad.noalias() += p.g.adjoint() * p.noise.solve(p.g * cc - p.d);
  return grad.real();
}

RealVector statistics_gradient(const SufficientStatistics& stats, const RealVector& c) {
  if (c.size() != stats.atoms()) throw DomainError("coefficient length does not match statistics");
  return stats.a.real() * c - stats.b.real();
}

double statistics_objective(const SufficientStatistics& stats, const RealVector& c, double lambda,
                            double data_energy) {
  if (c.size() != stats.atoms()) throw DomainError("coefficient length does not match statistics");
  const double quad = c.dot(stats.a.real() * c) - 2.0 * c.dot(stats.b.real()) + data_energy;
  return 0.5 * quad + lambda * c.lpNorm<1>();
}

RealVector batch_fista(PulseHistory pulses, const SolverConfig& cfg, int iterations) {
  // lambda = 0 is allowed here: the oracle doubles as a least-squares solver.
  if (!(cfg.lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  if (!(cfg.l_floor > 0.0)) throw ConfigError("l_floor must be positive");
  if (iterations < 1) throw DomainError("batch_fista needs at least one iteration");
  if (pulses.empty()) throw DomainError("batch_fista needs at least one pulse");
  const Index m = pulses.front().g.cols();
  RealVector c = RealVector::Zero(m);
  check_history(c, pulses);

  RealMatrix a = RealMatrix::Zero(m, m);
  RealVector b = RealVector::Zero(m);
  ComplexMatrix a_full = ComplexMatrix::Zero(m, m);
  for (const auto& p : pulses) {
    const ComplexMatrix w = p.noise.whiten(p.g);
    a_full.noalias() += w.adjoint() * w;
    b += (w.adjoint() * p.noise.whiten(p.d)).real();
  }
  make_hermitian(a_full);
  a = a_full.real();
  const double lipschitz = std::max(hermitian_max_eigenvalue(a_full, cfg.power_iteration).value, cfg.l_floor);

  double t = 1.0;
  const double tau = 1.0 / lipschitz;
  RealVector g(m);
  fista_iterations(c, t, iterations, tau, cfg.lambda * tau, [&](const RealVector& z) -> const RealVector& {
    g.noalias() = a * z;
    g -= b;
    return g;
  });
  return c;
}

RealVector reconstruct(const SolverState& state, const EdgeletDictionary& h) {
  return synthesize(h, state.c_hat);
}

}  // namespace osar
