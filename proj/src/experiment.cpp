#include "osar/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "osar/errors.hpp"
#include "osar/image_io.hpp"
#include "osar/metrics.hpp"

namespace osar {

SimulatedPulse simulate_pulse(const SceneGrid& grid, const PulseGeometry& pulse,
                              const EdgeletDictionary& h, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw DomainError("noise sigma must be nonnegative");
  if (h.pixels() != grid.size()) throw DomainError("dictionary and scene sizes differ");
  SimulatedPulse out;
  out.f = build_forward_matrix(pulse, grid);
  ComplexVector d = out.f * grid.reflectivity().cast<Complex>();
  if (sigma > 0.0)
    for (Index m = 0; m < d.size(); ++m) d[m] += rng.complex_normal(sigma * sigma);
  out.measurement.d = std::move(d);
  out.measurement.g = compose(out.f, h);
  out.measurement.noise = NoiseCovariance::scalar(sigma > 0.0 ? sigma * sigma : 1.0);
  return out;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::IdealCountReached:
      return "ideal_count_reached";
    case Termination::TrajectoryExhausted:
      return "trajectory_exhausted";
    case Termination::MaxPulses:
      return "max_pulses";
  }
  return "?";
}

namespace {

ExperimentConfig validated(ExperimentConfig cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

StreamingExperiment::StreamingExperiment(ExperimentConfig cfg)
    : cfg_(validated(std::move(cfg))),
      solver_cfg_(cfg_.solver()),
      scene_(make_scene(cfg_.scene, cfg_.side_pixels, cfg_.pixel_spacing)),
      dict_(build_dictionary(cfg_.dictionary)),
      mask_(scene_.support_mask()),
      schedule_(bernoulli_schedule(cfg_.trajectory.num_positions, cfg_.bernoulli_p, cfg_.seed)),
      noise_rng_(noise_stream_seed(cfg_.seed)),
      state_(SolverState::initial(dict_.atoms(), solver_cfg_)),
      bp_(BpAccumulator::empty(scene_.size())) {
  done_ = schedule_.selected_indices.empty();
}

const TraceRow& StreamingExperiment::step() {
  if (done_) throw StateError("experiment already terminated");
  const int position = schedule_.selected_indices[next_++];

  {
    const PulseGeometry geometry = make_pulse(cfg_.trajectory, cfg_.band, scene_.center(), position);
    const SimulatedPulse pulse = simulate_pulse(scene_, geometry, dict_, cfg_.noise_sigma, noise_rng_);
    accumulate(state_.stats, pulse.measurement, solver_cfg_.power_iteration);
    bp_accumulate(bp_, pulse.f, pulse.measurement.d);
  }  // pulse released here
  online_fista_pulse(state_, solver_cfg_);

  TraceRow row;
  row.pulse_index = state_.stats.pulse_count;
  row.position_index = position;
  row.n_large = count_large(state_.c_hat, cfg_.large_coeff_threshold);
  const RealVector recon = reconstruct(state_, dict_);
  row.residual = (recon - scene_.reflectivity()).norm() / scene_.reflectivity().norm();
  row.snr_online_db = snr_db(recon, mask_).snr_db;
  row.snr_bp_db = snr_db(bp_magnitude(bp_), mask_).snr_db;
  row.gain_db = row.snr_online_db - row.snr_bp_db;
  const auto nr = static_cast<std::int64_t>(cfg_.band.num_samples);
  row.memory_online =
      memory_values(MemoryMethod::OnlineFista, dict_.atoms(), scene_.size(), nr, row.pulse_index).values_stored;
  row.memory_batch =
      memory_values(MemoryMethod::BatchFista, dict_.atoms(), scene_.size(), nr, row.pulse_index).values_stored;
  rows_.push_back(row);

  const bool count_ok = row.n_large == cfg_.ideal_coeff_count;
  const bool residual_ok = row.residual <= cfg_.residual_tolerance;
  if ((cfg_.termination == TerminationMode::CountOnly && count_ok) ||
      (cfg_.termination == TerminationMode::CountAndResidual && count_ok && residual_ok)) {
    done_ = true;
    termination_ = Termination::IdealCountReached;
  } else if (row.pulse_index >= cfg_.max_pulses) {
    done_ = true;
    termination_ = Termination::MaxPulses;
  } else if (next_ >= schedule_.selected_indices.size()) {
    done_ = true;
    termination_ = Termination::TrajectoryExhausted;
  }
  return rows_.back();
}

ExperimentTrace StreamingExperiment::finish() const {
  ExperimentTrace t;
  t.rows = rows_;
  t.schedule = schedule_;
  t.termination = termination_;
  t.coefficients = state_.c_hat;
  t.online_image = reconstruct(state_, dict_);
  if (bp_.pulse_count > 0) {
    t.bp_magnitude = bp_magnitude(bp_);
    t.bp_db = bp_image_db(bp_);
  } else {
    t.bp_magnitude = RealVector::Zero(scene_.size());
    t.bp_db = RealVector::Constant(scene_.size(), 20.0 * std::log10(kDbFloor));
  }
  t.truth = scene_.reflectivity();
  t.required_pulses = required_pulses(cfg_.ideal_coeff_count, scene_.size(), cfg_.sampling_constant);
  t.power_iteration_fallbacks = state_.stats.power_iteration_fallbacks;
  t.atoms = dict_.atoms();
  return t;
}

std::int64_t StreamingExperiment::numeric_footprint() const {
  return live_values_stored(state_, dict_) + 2 * bp_.image_sum.size() + scene_.reflectivity().size();
}

ExperimentTrace run_experiment(const ExperimentConfig& cfg) {
  StreamingExperiment exp(cfg);
  while (!exp.done()) exp.step();
  return exp.finish();
}

std::vector<ExperimentTrace> run_many(const std::vector<ExperimentConfig>& configs, int jobs) {
  for (const auto& c : configs) c.validate();
  std::vector<ExperimentTrace> out(configs.size());
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      if (failed) return;
      try {
        out[i] = run_experiment(configs[i]);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  for (const auto& r : rows) {
    out << r.pulse_index << ',' << r.n_large << ',' << format_db(r.snr_online_db) << ','
        << format_db(r.snr_bp_db) << ',' << format_db(r.gain_db) << ',' << r.memory_online << ','
        << r.memory_batch << '\n';
  }
}

void write_manifest(std::ostream& out, const ExperimentConfig& cfg, const ExperimentTrace& trace) {
  out << "# run manifest\n";
  out << "artifact_version = " << kArtifactVersion << '\n';
  out << "config_hash = " << config_hash(cfg) << '\n';
  out << to_config_text(cfg);
  out << "atoms = " << trace.atoms << '\n';
  out << "scheduled_positions = " << trace.schedule.selected_indices.size() << '\n';
  out << "pulses_fired = " << trace.rows.size() << '\n';
  out << "termination_reason = " << to_string(trace.termination) << '\n';
  if (!trace.rows.empty()) {
    const auto& last = trace.rows.back();
    out << "final_n_large = " << last.n_large << '\n';
    out << "final_residual = " << last.residual << '\n';
    out << "final_snr_online_db = " << format_db(last.snr_online_db) << '\n';
    out << "final_snr_bp_db = " << format_db(last.snr_bp_db) << '\n';
  }
  out << "required_pulses_advisory = " << trace.required_pulses << '\n';
  out << "power_iteration_fallbacks = " << trace.power_iteration_fallbacks << '\n';
}

void write_run_outputs(const std::string& dir, const ExperimentConfig& cfg, const ExperimentTrace& trace) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base(dir);
  auto open = [&](const char* name) {
    std::ofstream f(base / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (base / name).string());
    return f;
  };
  {
    auto f = open("trace.csv");
    write_trace_csv(f, trace.rows);
  }
  {
    auto f = open("schedule.csv");
    write_schedule_csv(f, trace.schedule);
  }
  {
    auto f = open("manifest.txt");
    write_manifest(f, cfg, trace);
  }
  const int side = cfg.side_pixels;
  write_pgm_file((base / "recon_online.pgm").string(), to_image(trace.online_image, side));
  write_csv_file((base / "recon_online.csv").string(), to_image(trace.online_image, side));
  write_pgm_file((base / "recon_bp.pgm").string(), to_image(trace.bp_magnitude, side));
  write_csv_file((base / "recon_bp.csv").string(), to_image(trace.bp_magnitude, side));
  write_csv_file((base / "recon_bp_db.csv").string(), to_image(trace.bp_db, side));
  write_pgm_file((base / "scene.pgm").string(), to_image(trace.truth, side));
  write_csv_file((base / "scene.csv").string(), to_image(trace.truth, side));
}

}  // namespace osar
