#include "osar/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "osar/errors.hpp"

namespace osar {

bool SnrReport::infinite() const { return std::isinf(snr_db); }

SnrReport snr_db(const RealVector& reconstruction, const std::vector<bool>& truth_mask) {
  if (static_cast<Index>(truth_mask.size()) != reconstruction.size())
    throw DomainError("SNR mask length does not match image");
  double signal = 0.0;
  double noise = 0.0;
  Index n_signal = 0;
  Index n_noise = 0;
  for (Index i = 0; i < reconstruction.size(); ++i) {
    const double v = std::abs(reconstruction[i]);
    if (truth_mask[static_cast<std::size_t>(i)]) {
      signal += v;
      ++n_signal;
    } else {
      noise += v;
      ++n_noise;
    }
  }
  if (n_signal == 0 || n_noise == 0) throw DomainError("SNR mask needs both signal and background pixels");
  SnrReport r;
  r.signal_power = signal / static_cast<double>(n_signal);
  r.noise_power = noise / static_cast<double>(n_noise);
  if (r.noise_power == 0.0)
    r.snr_db = r.signal_power > 0.0 ? std::numeric_limits<double>::infinity()
                                    : std::numeric_limits<double>::quiet_NaN();
  else if (r.signal_power == 0.0)
    r.snr_db = -std::numeric_limits<double>::infinity();
  else
    r.snr_db = 20.0 * std::log10(r.signal_power / r.noise_power);
  return r;
}

int count_large(const RealVector& c, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("large-coefficient threshold must be positive");
  int count = 0;
  for (Index i = 0; i < c.size(); ++i)
    if (std::abs(c[i]) > threshold) ++count;
  return count;
}

MemoryReport memory_values(MemoryMethod method, std::int64_t m, std::int64_t n_pixels,
                           std::int64_t n_r, std::int64_t pulses) {
  if (m < 1 || n_pixels < 1 || n_r < 1 || pulses < 1) throw DomainError("memory sizes must be >= 1");
  const std::int64_t shared = m * (n_pixels + 1);
  if (method == MemoryMethod::BatchFista)
    return {method, shared + 2 * pulses * n_r * (1 + m + n_r)};
  return {method, shared + 2 * m * (m + 1)};
}

std::int64_t online_crossover_pulses(std::int64_t m, std::int64_t n_pixels, std::int64_t n_r) {
  // 2 M (M+1) < 2 n N_r (1 + M + N_r)  <=>  n > M (M+1) / (N_r (1 + M + N_r))
  const std::int64_t denom = n_r * (1 + m + n_r);
  std::int64_t n = m * (m + 1) / denom + 1;
  while (n > 1 && memory_values(MemoryMethod::OnlineFista, m, n_pixels, n_r, n - 1).values_stored <
                      memory_values(MemoryMethod::BatchFista, m, n_pixels, n_r, n - 1).values_stored)
    --n;
  return n;
}

std::int64_t live_values_stored(const SolverState& state, const EdgeletDictionary& h) {
  return static_cast<std::int64_t>(state.c_hat.size() + h.matrix().size() + 2 * state.stats.a.size() +
                                   2 * state.stats.b.size());
}

std::string format_db(double db) {
  if (std::isinf(db)) return db > 0 ? "inf" : "-inf";
  if (std::isnan(db)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", db);
  return buf;
}

}  // namespace osar
