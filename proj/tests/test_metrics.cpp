#include <cmath>
#include <limits>

#include "doctest.h"
#include "osar/errors.hpp"
#include "osar/metrics.hpp"
#include "support.hpp"

using namespace osar;
using doctest::Approx;

namespace {

std::vector<bool> half_mask(Index n) {
  std::vector<bool> m(static_cast<std::size_t>(n));
  for (Index i = 0; i < n / 2; ++i) m[static_cast<std::size_t>(i)] = true;
  return m;
}

}  // namespace

TEST_CASE("SNR examples") {
  const auto mask = half_mask(10);
  CHECK(snr_db(RealVector::Constant(10, 3.0), mask).snr_db == Approx(0.0));

  RealVector exact = RealVector::Zero(10);
  exact.head(5).setOnes();
  const SnrReport inf = snr_db(exact, mask);
  CHECK(inf.infinite());
  CHECK(inf.snr_db == std::numeric_limits<double>::infinity());

  RealVector quiet = RealVector::Constant(10, 0.001);
  quiet.head(5).setOnes();
  const SnrReport r = snr_db(quiet, mask);
  CHECK(r.snr_db == Approx(60.0).epsilon(1e-12));
  CHECK(r.signal_power == Approx(1.0));
  CHECK(r.noise_power == Approx(0.001));
}

TEST_CASE("SNR uses magnitudes and is scale invariant") {
  Rng rng(10);
  const auto mask = half_mask(40);
  const RealVector img = testing::random_real(rng, 40);
  const double base = snr_db(img, mask).snr_db;
  CHECK(snr_db(-img, mask).snr_db == Approx(base));
  for (double k : {1e-6, 0.3, 7.0, 1e8}) CHECK(snr_db(k * img, mask).snr_db == Approx(base).epsilon(1e-12));
}

TEST_CASE("SNR rejects degenerate masks") {
  CHECK_THROWS_AS(snr_db(RealVector::Ones(3), std::vector<bool>(3, true)), DomainError);
  CHECK_THROWS_AS(snr_db(RealVector::Ones(3), std::vector<bool>(3, false)), DomainError);
  CHECK_THROWS_AS(snr_db(RealVector::Ones(3), std::vector<bool>(4, false)), DomainError);
}

TEST_CASE("large-coefficient count") {
  CHECK(count_large(RealVector::Zero(5)) == 0);
  RealVector c(3);
  c << 0.03, 0.01, -0.05;
  CHECK(count_large(c, 0.02) == 2);
  CHECK(count_large(c) == 2);
  RealVector edge(1);
  edge << 0.02;
  CHECK(count_large(edge) == 0);
}

TEST_CASE("count_large is nonincreasing in the threshold") {
  Rng rng(11);
  const RealVector c = testing::random_real(rng, 200);
  int previous = count_large(c, 1e-6);
  for (double t = 1e-3; t < 4.0; t *= 1.3) {
    const int now = count_large(c, t);
    CHECK(now <= previous);
    previous = now;
  }
}

TEST_CASE("memory table examples") {
  CHECK(memory_values(MemoryMethod::OnlineFista, 100, 64, 50, 10).values_stored == 26700);
  CHECK(memory_values(MemoryMethod::BatchFista, 100, 64, 50, 10).values_stored == 157500);
  CHECK(memory_values(MemoryMethod::BatchFista, 100, 64, 50, 10).method == MemoryMethod::BatchFista);
}

TEST_CASE("memory formulas over random sizes") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng.uniform() * 2000);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.uniform() * 4096);
    const std::int64_t nr = 1 + static_cast<std::int64_t>(rng.uniform() * 512);
    const std::int64_t p = 1 + static_cast<std::int64_t>(rng.uniform() * 1000);
    const std::int64_t h = m * (n + 1);
    CHECK(memory_values(MemoryMethod::BatchFista, m, n, nr, p).values_stored == h + 2 * p * nr * (1 + m + nr));
    CHECK(memory_values(MemoryMethod::OnlineFista, m, n, nr, p).values_stored == h + 2 * m * (m + 1));
    CHECK(memory_values(MemoryMethod::OnlineFista, m, n, nr, p + 1).values_stored ==
          memory_values(MemoryMethod::OnlineFista, m, n, nr, p).values_stored);
    const auto b0 = memory_values(MemoryMethod::BatchFista, m, n, nr, p).values_stored;
    const auto b1 = memory_values(MemoryMethod::BatchFista, m, n, nr, p + 1).values_stored;
    const auto b2 = memory_values(MemoryMethod::BatchFista, m, n, nr, p + 2).values_stored;
    CHECK(b2 - b1 == b1 - b0);
  }
}

TEST_CASE("online crossover for the desk dictionaries") {
  // Online < batch once 2 n N_r (1 + M + N_r) > 2 M (M + 1).
  CHECK(online_crossover_pulses(416, 256, 64) == 6);
  CHECK(memory_values(MemoryMethod::OnlineFista, 416, 256, 64, 6).values_stored <
        memory_values(MemoryMethod::BatchFista, 416, 256, 64, 6).values_stored);
  CHECK(memory_values(MemoryMethod::OnlineFista, 416, 256, 64, 5).values_stored >
        memory_values(MemoryMethod::BatchFista, 416, 256, 64, 5).values_stored);
  CHECK(online_crossover_pulses(100, 64, 50) == 2);
}

TEST_CASE("live solver structures match the online formula") {
  for (SceneId id : {SceneId::Scene1, SceneId::Scene3}) {
    const EdgeletDictionary h = build_dictionary(dictionary_for_scene(id, 16));
    const SolverState s = SolverState::initial(h.atoms(), SolverConfig{});
    const std::int64_t counted = s.c_hat.size() + h.matrix().size() + 2 * s.stats.a.size() + 2 * s.stats.b.size();
    CHECK(live_values_stored(s, h) == counted);
    CHECK(live_values_stored(s, h) == memory_values(MemoryMethod::OnlineFista, h.atoms(), 256, 64, 1).values_stored);
  }
}

TEST_CASE("dB formatting") {
  CHECK(format_db(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_db(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_db(std::nan("")) == "nan");
  CHECK(format_db(12.5) == "12.500000");
}
