#pragma once

#include <cstdint>

#include "osar/types.hpp"

namespace osar {

inline constexpr double kDbFloor = 1e-12;

/// Running back-projection sum  sum_k F_k^H d_k.
struct BpAccumulator {
  ComplexVector image_sum;
  std::int64_t pulse_count = 0;

  static BpAccumulator empty(Index pixels);
};

void bp_accumulate(BpAccumulator& acc, const ForwardMatrix& f, const ComplexVector& d);

/// |mean back-projection| per pixel (linear scale). Throws StateError with no pulses.
RealVector bp_magnitude(const BpAccumulator& acc);

/// 20 log10(max(|mean|, 1e-12)) per pixel.
RealVector bp_image_db(const BpAccumulator& acc);

}  // namespace osar
