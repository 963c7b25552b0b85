#include "osar/geometry.hpp"

#include <cmath>
#include <string>

#include "osar/errors.hpp"

namespace osar {

void TrajectoryConfig::validate() const {
  if (!(radius > 0.0)) throw ConfigError("trajectory radius must be positive");
  if (!(altitude >= 0.0)) throw ConfigError("trajectory altitude must be nonnegative");
  if (!(arc_end > arc_start)) throw ConfigError("trajectory arc_end must exceed arc_start");
  if (num_positions < 1) throw ConfigError("trajectory needs at least one position");
}

void FrequencyBand::validate() const {
  if (num_samples < 1) throw ConfigError("need at least one frequency sample");
  if (!(center_hz > 0.0)) throw ConfigError("center frequency must be positive");
  if (!(bandwidth_hz >= 0.0)) throw ConfigError("bandwidth must be nonnegative");
  if (num_samples > 1 && !(bandwidth_hz > 0.0))
    throw ConfigError("multiple frequency samples need a positive bandwidth");
  if (bandwidth_hz / 2.0 >= center_hz) throw ConfigError("band extends below 0 Hz");
}

RealVector FrequencyBand::angular_frequencies() const {
  validate();
  RealVector w(num_samples);
  if (num_samples == 1) {
    w[0] = 2.0 * kPi * center_hz;
    return w;
  }
  const double step = bandwidth_hz / (num_samples - 1);
  const double f0 = center_hz - bandwidth_hz / 2.0;
  for (int m = 0; m < num_samples; ++m) w[m] = 2.0 * kPi * (f0 + m * step);
  return w;
}

Vec3 platform_position(const TrajectoryConfig& cfg, const Vec3& scene_center, int k) {
  cfg.validate();
  if (k < 0 || k >= cfg.num_positions)
    throw DomainError("trajectory position " + std::to_string(k) + " out of range");
  const double theta =
      cfg.num_positions == 1
          ? cfg.arc_start
          : cfg.arc_start + (cfg.arc_end - cfg.arc_start) * k / (cfg.num_positions - 1);
  return scene_center +
         Vec3(cfg.radius * std::cos(theta), cfg.radius * std::sin(theta), cfg.altitude);
}

double round_trip_delay(const Vec3& position, const Vec3& target) {
  const double range = (position - target).norm();
  if (range == 0.0) throw GeometryError("platform and target coincide");
  return 2.0 * range / kSpeedOfLight;
}

PulseGeometry make_pulse(const TrajectoryConfig& trajectory, const FrequencyBand& band,
                         const Vec3& scene_center, int k) {
  return {k, platform_position(trajectory, scene_center, k), band.angular_frequencies()};
}

ForwardMatrix build_forward_matrix(const PulseGeometry& pulse, const SceneGrid& grid) {
  const Index nr = pulse.frequencies.size();
  if (nr < 1) throw DomainError("pulse has no frequency samples");
  for (Index m = 1; m < nr; ++m)
    if (!(pulse.frequencies[m] > pulse.frequencies[m - 1]))
      throw DomainError("pulse frequencies must be strictly increasing");

  const Index n = grid.size();
  ForwardMatrix f(nr, n);
  for (Index i = 0; i < n; ++i) {
    const double delay = round_trip_delay(pulse.position, grid.pixel_position(i));
    for (Index m = 0; m < nr; ++m) {
      const double phase = -pulse.frequencies[m] * delay;
      f(m, i) = Complex(std::cos(phase), std::sin(phase));
    }
  }
  return f;
}

}  // namespace osar
