#include "osar/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "osar/errors.hpp"

namespace osar {

BpAccumulator BpAccumulator::empty(Index pixels) {
  return {ComplexVector::Zero(pixels), 0};
}

void bp_accumulate(BpAccumulator& acc, const ForwardMatrix& f, const ComplexVector& d) {
  if (f.cols() != acc.image_sum.size()) throw DomainError("back-projection: F width does not match image");
  if (f.rows() != d.size()) throw DomainError("back-projection: data length does not match F rows");
  acc.image_sum.noalias() += f.adjoint() * d;
  ++acc.pulse_count;
}

RealVector bp_magnitude(const BpAccumulator& acc) {
  if (acc.pulse_count < 1) throw StateError("back-projection image requested before any pulse");
  return acc.image_sum.cwiseAbs() / static_cast<double>(acc.pulse_count);
}

RealVector bp_image_db(const BpAccumulator& acc) {
  RealVector mag = bp_magnitude(acc);
  for (Index i = 0; i < mag.size(); ++i) mag[i] = 20.0 * std::log10(std::max(mag[i], kDbFloor));
  return mag;
}

}  // namespace osar
