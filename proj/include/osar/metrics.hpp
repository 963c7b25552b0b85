#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osar/dictionary.hpp"
#include "osar/solver.hpp"
#include "osar/types.hpp"

namespace osar {

inline constexpr double kLargeCoefficientThreshold = 2e-2;

/// 20 log10(mu_signal / mu_noise); mu = mean |pixel| over the ground-truth
/// support and its complement. snr_db is +inf when mu_noise is zero.
struct SnrReport {
  double snr_db = 0.0;
  double signal_power = 0.0;
  double noise_power = 0.0;

  bool infinite() const;
};

/// Throws DomainError when the mask is all true, all false, or mis-sized.
SnrReport snr_db(const RealVector& reconstruction, const std::vector<bool>& truth_mask);

/// Count of |c_j| > threshold.
int count_large(const RealVector& c, double threshold = kLargeCoefficientThreshold);

enum class MemoryMethod { BatchFista, OnlineFista };

struct MemoryReport {
  MemoryMethod method = MemoryMethod::OnlineFista;
  std::int64_t values_stored = 0;
};

/// Stored scalar counts, complex values counted twice:
///   batch:  M (N + 1) + 2 n N_r (1 + M + N_r)
///   online: M (N + 1) + 2 M (M + 1)
MemoryReport memory_values(MemoryMethod method, std::int64_t m, std::int64_t n_pixels,
                           std::int64_t n_r, std::int64_t pulses);

/// Smallest pulse count at which the online footprint is strictly below batch.
std::int64_t online_crossover_pulses(std::int64_t m, std::int64_t n_pixels, std::int64_t n_r);

/// Scalars held by the live online solver: c_hat, H, A (x2), b (x2).
std::int64_t live_values_stored(const SolverState& state, const EdgeletDictionary& h);

/// Fixed-precision decibel text; infinities render as "inf" / "-inf".
std::string format_db(double db);

}  // namespace osar
