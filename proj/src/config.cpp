#include "osar/config.hpp"

#include <algorithm>
#include <charconv>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "osar/errors.hpp"

namespace osar {

std::string to_string(TerminationMode mode) {
  switch (mode) {
    case TerminationMode::CountAndResidual:
      return "count_and_residual";
    case TerminationMode::CountOnly:
      return "count_only";
    case TerminationMode::Disabled:
      return "disabled";
  }
  return "?";
}

TerminationMode termination_mode_from_string(std::string_view text) {
  if (text == "count_and_residual") return TerminationMode::CountAndResidual;
  if (text == "count_only") return TerminationMode::CountOnly;
  if (text == "disabled") return TerminationMode::Disabled;
  throw ConfigError("unknown termination mode '" + std::string(text) + "'");
}

namespace {

bool same_set(std::vector<double> a, std::vector<double> b) {
  for (auto& v : a) v = normalize_rotation(v);
  for (auto& v : b) v = normalize_rotation(v);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-9) return false;
  return true;
}

bool same_set(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (side_pixels < kMinSceneSide)
    throw ConfigError("side_pixels must be >= " + std::to_string(kMinSceneSide));
  if (!(pixel_spacing > 0.0)) throw ConfigError("pixel_spacing must be positive");
  if (dictionary.side_pixels != side_pixels)
    throw ConfigError("dictionary side does not match side_pixels");
  dictionary.validate();
  trajectory.validate();
  band.validate();
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) throw ConfigError("noise_sigma must be >= 0");
  solver().validate();
  if (!(bernoulli_p > 0.0 && bernoulli_p <= 1.0)) throw ConfigError("bernoulli_p must lie in (0, 1]");
  if (ideal_coeff_count < 1) throw ConfigError("ideal_coeff_count must be >= 1");
  if (!(large_coeff_threshold > 0.0)) throw ConfigError("large_coeff_threshold must be positive");
  if (max_pulses < 1) throw ConfigError("max_pulses must be >= 1");
  if (!(residual_tolerance > 0.0)) throw ConfigError("residual_tolerance must be positive");
  if (!(sampling_constant > 0.0)) throw ConfigError("sampling_constant must be positive");
  if (!allow_dictionary_override) {
    const DictionarySpec ref = dictionary_for_scene(scene, side_pixels);
    if (!same_set(dictionary.lengths, ref.lengths) || !same_set(dictionary.rotations, ref.rotations))
      throw ConfigError(to_string(scene) +
                        " requires its reference dictionary; set allow_dictionary_override = true to change it");
  }
}

SolverConfig ExperimentConfig::solver() const {
  SolverConfig s;
  s.lambda = lambda;
  s.inner_steps = inner_steps;
  s.l_floor = l_floor;
  s.reset_momentum_each_pulse = reset_momentum;
  return s;
}

// Calibrated presets. lambda is the largest power of two for which every
// Scene 1 seed still terminates on the exact support; see docs/calibration.md.
ExperimentConfig preset_config(SceneId id) {
  ExperimentConfig c;
  c.scene = id;
  c.dictionary = dictionary_for_scene(id, c.side_pixels);
  c.ideal_coeff_count = ideal_coefficient_count(id);
  c.noise_sigma = 0.4;
  c.seed = 1;
  c.lambda = 2048.0;
  c.bernoulli_p = 0.05;
  return c;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Degrees are printed at 12 significant digits so deg -> rad -> deg is stable.
std::string fmt_deg(double rad) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", rad_to_deg(rad));
  return buf;
}

struct Parser {
  int line = 0;
  std::string key;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line) + " (" + key + "): " + msg);
  }

  double real(const std::string& v) const {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x)) fail("expected a number, got '" + v + "'");
    return x;
  }

  long long integer(const std::string& v) const {
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno == ERANGE) fail("expected an integer, got '" + v + "'");
    return x;
  }

  int int32(const std::string& v) const {
    const long long x = integer(v);
    if (x < -2147483647LL || x > 2147483647LL) fail("integer out of range");
    return static_cast<int>(x);
  }

  std::uint64_t unsigned64(const std::string& v) const {
    errno = 0;
    char* end = nullptr;
    if (!v.empty() && v[0] == '-') fail("expected a nonnegative integer");
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno == ERANGE) fail("expected a nonnegative integer, got '" + v + "'");
    return x;
  }

  bool boolean(const std::string& v) const {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail("expected true or false, got '" + v + "'");
  }

  template <class T, class F>
  std::vector<T> list(const std::string& v, F&& item) const {
    std::vector<T> out;
    std::stringstream ss(v);
    std::string piece;
    while (std::getline(ss, piece, ',')) out.push_back(item(trim(piece)));
    if (out.empty()) fail("expected a comma-separated list");
    return out;
  }
};

using Setter = std::function<void(ExperimentConfig&, const Parser&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"side_pixels",
       [](auto& c, const Parser& p, const auto& v) {
         c.side_pixels = p.int32(v);
         c.dictionary.side_pixels = c.side_pixels;
       }},
      {"pixel_spacing", [](auto& c, const Parser& p, const auto& v) { c.pixel_spacing = p.real(v); }},
      {"dictionary_lengths",
       [](auto& c, const Parser& p, const auto& v) {
         c.dictionary.lengths = p.template list<int>(v, [&](const std::string& s) { return p.int32(s); });
       }},
      {"dictionary_rotations_deg",
       [](auto& c, const Parser& p, const auto& v) {
         c.dictionary.rotations =
             p.template list<double>(v, [&](const std::string& s) { return deg_to_rad(p.real(s)); });
       }},
      {"trajectory_radius", [](auto& c, const Parser& p, const auto& v) { c.trajectory.radius = p.real(v); }},
      {"trajectory_altitude", [](auto& c, const Parser& p, const auto& v) { c.trajectory.altitude = p.real(v); }},
      {"arc_start_deg",
       [](auto& c, const Parser& p, const auto& v) { c.trajectory.arc_start = deg_to_rad(p.real(v)); }},
      {"arc_end_deg", [](auto& c, const Parser& p, const auto& v) { c.trajectory.arc_end = deg_to_rad(p.real(v)); }},
      {"num_positions", [](auto& c, const Parser& p, const auto& v) { c.trajectory.num_positions = p.int32(v); }},
      {"center_frequency_hz", [](auto& c, const Parser& p, const auto& v) { c.band.center_hz = p.real(v); }},
      {"bandwidth_hz", [](auto& c, const Parser& p, const auto& v) { c.band.bandwidth_hz = p.real(v); }},
      {"num_frequencies", [](auto& c, const Parser& p, const auto& v) { c.band.num_samples = p.int32(v); }},
      {"noise_sigma", [](auto& c, const Parser& p, const auto& v) { c.noise_sigma = p.real(v); }},
      {"lambda", [](auto& c, const Parser& p, const auto& v) { c.lambda = p.real(v); }},
      {"inner_steps", [](auto& c, const Parser& p, const auto& v) { c.inner_steps = p.int32(v); }},
      {"l_floor", [](auto& c, const Parser& p, const auto& v) { c.l_floor = p.real(v); }},
      {"reset_momentum", [](auto& c, const Parser& p, const auto& v) { c.reset_momentum = p.boolean(v); }},
      {"bernoulli_p", [](auto& c, const Parser& p, const auto& v) { c.bernoulli_p = p.real(v); }},
      {"seed", [](auto& c, const Parser& p, const auto& v) { c.seed = p.unsigned64(v); }},
      {"ideal_coeff_count", [](auto& c, const Parser& p, const auto& v) { c.ideal_coeff_count = p.int32(v); }},
      {"large_coeff_threshold",
       [](auto& c, const Parser& p, const auto& v) { c.large_coeff_threshold = p.real(v); }},
      {"max_pulses", [](auto& c, const Parser& p, const auto& v) { c.max_pulses = p.int32(v); }},
      {"residual_tolerance", [](auto& c, const Parser& p, const auto& v) { c.residual_tolerance = p.real(v); }},
      {"termination",
       [](auto& c, const Parser& p, const auto& v) {
         try {
           c.termination = termination_mode_from_string(v);
         } catch (const ConfigError& e) {
           p.fail(e.what());
         }
       }},
      {"allow_dictionary_override",
       [](auto& c, const Parser& p, const auto& v) { c.allow_dictionary_override = p.boolean(v); }},
      {"sampling_constant", [](auto& c, const Parser& p, const auto& v) { c.sampling_constant = p.real(v); }},
  };
  return table;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  Parser parser;
  while (std::getline(in, raw)) {
    ++parser.line;
    parser.key.clear();
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) parser.fail("expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    parser.key = key;
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) parser.fail("empty key");
    if (!entries.emplace(key, std::make_pair(value, parser.line)).second) parser.fail("duplicate key");
  }

  const auto scene_it = entries.find("scene");
  if (scene_it == entries.end()) throw ConfigError("config is missing the required 'scene' key");
  parser.line = scene_it->second.second;
  parser.key = "scene";
  const int scene_number = parser.int32(scene_it->second.first);
  if (scene_number < 1 || scene_number > 4) parser.fail("scene must be 1..4");
  ExperimentConfig cfg = preset_config(scene_from_int(scene_number));
  entries.erase(scene_it);

  // Apply in canonical order so side_pixels lands before the dictionary keys.
  for (const auto& [name, setter] : setters()) {
    const auto it = entries.find(name);
    if (it == entries.end()) continue;
    parser.line = it->second.second;
    parser.key = name;
    setter(cfg, parser, it->second.first);
    entries.erase(it);
  }
  if (!entries.empty()) {
    const auto& [key, entry] = *entries.begin();
    throw ConfigError("config line " + std::to_string(entry.second) + ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream out;
  auto join_int = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s;
  };
  auto join_deg = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt_deg(v[i]);
    return s;
  };
  out << "scene = " << to_int(c.scene) << '\n'
      << "side_pixels = " << c.side_pixels << '\n'
      << "pixel_spacing = " << fmt(c.pixel_spacing) << '\n'
      << "dictionary_lengths = " << join_int(c.dictionary.lengths) << '\n'
      << "dictionary_rotations_deg = " << join_deg(c.dictionary.rotations) << '\n'
      << "trajectory_radius = " << fmt(c.trajectory.radius) << '\n'
      << "trajectory_altitude = " << fmt(c.trajectory.altitude) << '\n'
      << "arc_start_deg = " << fmt_deg(c.trajectory.arc_start) << '\n'
      << "arc_end_deg = " << fmt_deg(c.trajectory.arc_end) << '\n'
      << "num_positions = " << c.trajectory.num_positions << '\n'
      << "center_frequency_hz = " << fmt(c.band.center_hz) << '\n'
      << "bandwidth_hz = " << fmt(c.band.bandwidth_hz) << '\n'
      << "num_frequencies = " << c.band.num_samples << '\n'
      << "noise_sigma = " << fmt(c.noise_sigma) << '\n'
      << "lambda = " << fmt(c.lambda) << '\n'
      << "inner_steps = " << c.inner_steps << '\n'
      << "l_floor = " << fmt(c.l_floor) << '\n'
      << "reset_momentum = " << (c.reset_momentum ? "true" : "false") << '\n'
      << "bernoulli_p = " << fmt(c.bernoulli_p) << '\n'
      << "seed = " << c.seed << '\n'
      << "ideal_coeff_count = " << c.ideal_coeff_count << '\n'
      << "large_coeff_threshold = " << fmt(c.large_coeff_threshold) << '\n'
      << "max_pulses = " << c.max_pulses << '\n'
      << "residual_tolerance = " << fmt(c.residual_tolerance) << '\n'
      << "termination = " << to_string(c.termination) << '\n'
      << "allow_dictionary_override = " << (c.allow_dictionary_override ? "true" : "false") << '\n'
      << "sampling_constant = " << fmt(c.sampling_constant) << '\n';
  return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : to_config_text(cfg)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return to_config_text(a) == to_config_text(b);
}

}  // namespace osar
