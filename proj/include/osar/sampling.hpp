#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "osar/types.hpp"

namespace osar {

struct PulseSchedule {
  std::vector<int> selected_indices;  // strictly increasing
  double p = 1.0;
  std::uint64_t seed = 0;
};

/// Independent Bernoulli(p) trial per trajectory position.
///
/// Position k is selected when the k-th uniform draw of Rng(seed) is below p.
/// Throws DomainError unless 0 < p <= 1 and num_positions >= 1.
PulseSchedule bernoulli_schedule(int num_positions, double p, std::uint64_t seed);

/// p such that num_positions * p equals the expected pulse budget, clamped to (0, 1].
double probability_for_expected(int num_positions, double expected_pulses);

/// ceil(constant * K * ln(N / K)); advisory only.
std::int64_t required_pulses(std::int64_t k, std::int64_t n, double constant = 1.0);

struct RipEstimate {
  double delta = 0.0;
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  std::int64_t supports = 0;
  bool columns_normalized = true;
};

inline constexpr std::int64_t kMaxRipSupports = 1'000'000;

/// Exhaustive restricted-isometry constant of order K after normalizing the
/// columns of `g_bar` to unit norm. Throws SizeError if C(M, K) exceeds
/// kMaxRipSupports.
RipEstimate rip_constant(const ComplexMatrix& g_bar, int k);

/// C(n, k), saturating at limit + 1.
std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t limit);

/// "position_index" header followed by one index per line.
void write_schedule_csv(std::ostream& out, const PulseSchedule& schedule);

}  // namespace osar
