#pragma once

#include "osar/scene.hpp"
#include "osar/types.hpp"

namespace osar {

/// Circular spotlight arc around the scene center.
struct TrajectoryConfig {
  double radius = 4000.0;    // m, horizontal distance from scene center
  double altitude = 1000.0;  // m
  double arc_start = 0.0;    // rad
  double arc_end = deg_to_rad(2.0);
  int num_positions = 1000;

  void validate() const;
};

/// Uniformly spaced frequency samples standing in for the fast-time axis.
struct FrequencyBand {
  double center_hz = 1.0e9;
  double bandwidth_hz = 100.0e6;
  int num_samples = 64;

  void validate() const;
  /// Angular frequencies (rad/s), strictly increasing. One sample sits at the center.
  RealVector angular_frequencies() const;
};

struct PulseGeometry {
  int slow_time_index = 0;
  Vec3 position = Vec3::Zero();
  RealVector frequencies;  // rad/s
};

/// scene_center + (r cos th_k, r sin th_k, altitude), th_k linear on [arc_start, arc_end].
Vec3 platform_position(const TrajectoryConfig& cfg, const Vec3& scene_center, int k);

/// (2/c) |position - target|. Throws GeometryError for coincident points.
double round_trip_delay(const Vec3& position, const Vec3& target);

PulseGeometry make_pulse(const TrajectoryConfig& trajectory, const FrequencyBand& band,
                         const Vec3& scene_center, int k);

/// F(m, i) = exp(-j w_m (2/c) |gamma - x_i|): the frequency-domain Born model
/// with unit amplitude.
ForwardMatrix build_forward_matrix(const PulseGeometry& pulse, const SceneGrid& grid);

}  // namespace osar
