#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "osar/dictionary.hpp"
#include "osar/geometry.hpp"
#include "osar/scene.hpp"
#include "osar/solver.hpp"

namespace osar {

enum class TerminationMode {
  CountAndResidual,  // ideal coefficient count and residual <= tolerance
  CountOnly,         // ideal coefficient count alone
  Disabled,          // run the whole schedule / pulse cap
};

std::string to_string(TerminationMode mode);
TerminationMode termination_mode_from_string(std::string_view text);

struct ExperimentConfig {
  SceneId scene = SceneId::Scene1;
  int side_pixels = kDefaultSidePixels;
  double pixel_spacing = kDefaultPixelSpacing;
  DictionarySpec dictionary = dictionary_for_scene(SceneId::Scene1, kDefaultSidePixels);
  TrajectoryConfig trajectory{};
  FrequencyBand band{};
  double noise_sigma = 0.4;
  double lambda = 1.0;
  int inner_steps = 20;
  double l_floor = 1e-12;
  bool reset_momentum = false;
  double bernoulli_p = 0.1;
  std::uint64_t seed = 0;
  int ideal_coeff_count = 4;
  double large_coeff_threshold = 2e-2;
  int max_pulses = 1000;
  double residual_tolerance = 0.05;
  TerminationMode termination = TerminationMode::CountAndResidual;
  bool allow_dictionary_override = false;
  double sampling_constant = 1.0;

  /// Throws ConfigError on any inconsistency, including a scene/dictionary
  /// pairing that differs from the reference pairing without the override.
  void validate() const;
  SolverConfig solver() const;
};

/// Shipped preset for a scene (identical to configs/scene<N>.cfg).
ExperimentConfig preset_config(SceneId id);

/// Parses `key = value` lines; `#` starts a comment. The `scene` key is
/// required and selects the preset that the remaining keys override.
/// Throws ConfigError with the line number on malformed input, unknown or
/// repeated keys.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Every field in a fixed order; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& cfg);

/// FNV-1a 64 of the canonical config text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

}  // namespace osar
