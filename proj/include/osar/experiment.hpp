#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "osar/baseline.hpp"
#include "osar/config.hpp"
#include "osar/dictionary.hpp"
#include "osar/geometry.hpp"
#include "osar/random.hpp"
#include "osar/sampling.hpp"
#include "osar/scene.hpp"
#include "osar/solver.hpp"

namespace osar {

inline constexpr const char* kArtifactVersion = "osar 1.0.0";

struct SimulatedPulse {
  ForwardMatrix f;
  PulseMeasurement measurement;
};

/// d = F rho + eps with eps ~ CN(0, sigma^2 I); G = F H attached.
/// R = sigma^2 I, or I when sigma == 0 (noiseless data, unit weights).
SimulatedPulse simulate_pulse(const SceneGrid& grid, const PulseGeometry& pulse,
                              const EdgeletDictionary& h, double sigma, Rng& rng);

enum class Termination { IdealCountReached, TrajectoryExhausted, MaxPulses };
std::string to_string(Termination t);

struct TraceRow {
  std::int64_t pulse_index = 0;  // 1-based count of fired pulses
  int position_index = 0;        // trajectory position the pulse was fired from
  int n_large = 0;
  double snr_online_db = 0.0;
  double snr_bp_db = 0.0;
  double gain_db = 0.0;
  std::int64_t memory_online = 0;
  std::int64_t memory_batch = 0;
  double residual = 0.0;  // ||H c - rho|| / ||rho||
};

struct ExperimentTrace {
  std::vector<TraceRow> rows;
  PulseSchedule schedule;
  Termination termination = Termination::TrajectoryExhausted;
  RealVector coefficients;
  RealVector online_image;
  RealVector bp_magnitude;
  RealVector bp_db;
  RealVector truth;
  std::int64_t required_pulses = 0;
  std::int64_t power_iteration_fallbacks = 0;
  Index atoms = 0;
};

/// Streaming experiment: owns the scene, dictionary, solver state and BP
/// accumulator. Each step fires one scheduled pulse, folds it into the
/// sufficient statistics and the BP sum, and drops it.
class StreamingExperiment {
 public:
  explicit StreamingExperiment(ExperimentConfig cfg);

  bool done() const { return done_; }
  const TraceRow& step();
  ExperimentTrace finish() const;

  const ExperimentConfig& config() const { return cfg_; }
  const SceneGrid& scene() const { return scene_; }
  const EdgeletDictionary& dictionary() const { return dict_; }
  const SolverState& solver_state() const { return state_; }
  const BpAccumulator& bp() const { return bp_; }
  const PulseSchedule& schedule() const { return schedule_; }
  const std::vector<TraceRow>& rows() const { return rows_; }

  /// Scalars held in numeric buffers (complex counted twice). Constant in
  /// the number of fired pulses: no pulse data is kept between steps.
  std::int64_t numeric_footprint() const;

 private:
  ExperimentConfig cfg_;
  SolverConfig solver_cfg_;
  SceneGrid scene_;
  EdgeletDictionary dict_;
  std::vector<bool> mask_;
  PulseSchedule schedule_;
  Rng noise_rng_;
  SolverState state_;
  BpAccumulator bp_;
  std::vector<TraceRow> rows_;
  std::size_t next_ = 0;
  bool done_ = false;
  Termination termination_ = Termination::TrajectoryExhausted;
};

/// Validates the config, then runs until auto-termination, schedule
/// exhaustion or the pulse cap.
ExperimentTrace run_experiment(const ExperimentConfig& cfg);

/// Runs independent configs on up to `jobs` threads; results keep input order.
std::vector<ExperimentTrace> run_many(const std::vector<ExperimentConfig>& configs, int jobs);

inline constexpr const char* kTraceHeader =
    "pulse_index,n_large,snr_online_db,snr_bp_db,gain_db,memory_online,memory_batch";

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
void write_manifest(std::ostream& out, const ExperimentConfig& cfg, const ExperimentTrace& trace);

/// trace.csv, schedule.csv, manifest.txt, recon_online.{pgm,csv},
/// recon_bp.{pgm,csv}, recon_bp_db.csv, scene.{pgm,csv}.
void write_run_outputs(const std::string& dir, const ExperimentConfig& cfg, const ExperimentTrace& trace);

}  // namespace osar
