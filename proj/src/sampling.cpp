#include "osar/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "osar/errors.hpp"
#include "osar/random.hpp"

namespace osar {

PulseSchedule bernoulli_schedule(int num_positions, double p, std::uint64_t seed) {
  if (num_positions < 1) throw DomainError("schedule needs at least one position");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("Bernoulli probability must lie in (0, 1]");
  PulseSchedule s;
  s.p = p;
  s.seed = seed;
  Rng rng(seed);
  for (int k = 0; k < num_positions; ++k)
    if (rng.uniform() < p) s.selected_indices.push_back(k);
  return s;
}

double probability_for_expected(int num_positions, double expected_pulses) {
  if (num_positions < 1) throw DomainError("schedule needs at least one position");
  if (!(expected_pulses > 0.0)) throw DomainError("expected pulse count must be positive");
  return std::min(1.0, expected_pulses / num_positions);
}

std::int64_t required_pulses(std::int64_t k, std::int64_t n, double constant) {
  if (k < 1) throw DomainError("sparsity must be at least 1");
  if (k >= n) throw DomainError("sparsity must be smaller than the scene size");
  if (!(constant > 0.0)) throw DomainError("sampling constant must be positive");
  const double kd = static_cast<double>(k);
  return static_cast<std::int64_t>(std::ceil(constant * kd * std::log(static_cast<double>(n) / kd)));
}

std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t limit) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Exact while the running value stays under the cap: each partial product
  // C(n-k+i, i) is an integer.
  long double value = 1.0L;
  for (std::int64_t i = 1; i <= k; ++i) {
    value = value * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (value > static_cast<long double>(limit)) return limit + 1;
  }
  return static_cast<std::int64_t>(std::llround(value));
}

RipEstimate rip_constant(const ComplexMatrix& g_bar, int k) {
  const Index m = g_bar.cols();
  if (k < 1 || k > m) throw DomainError("RIP order must lie in [1, M]");
  const std::int64_t supports = binomial_capped(m, k, kMaxRipSupports);
  if (supports > kMaxRipSupports)
    throw SizeError("RIP enumeration over C(" + std::to_string(m) + ", " + std::to_string(k) +
                    ") supports exceeds the guard");

  ComplexMatrix g = g_bar;
  for (Index j = 0; j < m; ++j) {
    const double norm = g.col(j).norm();
    if (norm == 0.0) throw DomainError("RIP: zero column cannot be normalized");
    g.col(j) /= norm;
  }
  const ComplexMatrix gram = g.adjoint() * g;

  RipEstimate est;
  est.supports = supports;
  est.lambda_min = 1.0;
  est.lambda_max = 1.0;
  std::vector<Index> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  ComplexMatrix sub(k, k);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig;
  while (true) {
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = gram(idx[r], idx[c]);
    eig.compute(sub, Eigen::EigenvaluesOnly);
    est.lambda_min = std::min(est.lambda_min, eig.eigenvalues()[0]);
    est.lambda_max = std::max(est.lambda_max, eig.eigenvalues()[k - 1]);
    // Next combination in lexicographic order.
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int r = pos + 1; r < k; ++r) idx[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(r - 1)] + 1;
  }
  est.delta = std::max(1.0 - est.lambda_min, est.lambda_max - 1.0);
  return est;
}

void write_schedule_csv(std::ostream& out, const PulseSchedule& schedule) {
  out << "position_index\n";
  for (int k : schedule.selected_indices) out << k << '\n';
}

}  // namespace osar
