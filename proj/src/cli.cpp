#include "osar/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "osar/config.hpp"
#include "osar/errors.hpp"
#include "osar/experiment.hpp"
#include "osar/image_io.hpp"
#include "osar/metrics.hpp"

namespace osar {
namespace {

std::vector<SceneId> parse_scene_list(const std::string& text) {
  if (text == "all") return {std::begin(kAllScenes), std::end(kAllScenes)};
  std::vector<SceneId> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    int id = 0;
    try {
      id = std::stoi(piece);
    } catch (const std::exception&) {
      throw ConfigError("bad scene '" + piece + "' (expected 1..4 or all)");
    }
    out.push_back(scene_from_int(id));
  }
  if (out.empty()) throw ConfigError("no scenes selected");
  return out;
}

int default_jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online FISTA sparse SAR reconstruction simulator", "osar"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a single streaming experiment");
  std::string config_path;
  std::uint64_t run_seed = 0;
  std::string run_out = "out";
  run->add_option("--config", config_path, "Experiment config file")->required();
  auto* seed_opt = run->add_option("--seed", run_seed, "Override the config seed");
  run->add_option("--out", run_out, "Output directory");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Coefficient-count and SNR-gain curves across scenes and seeds");
  std::string sweep_scenes = "all";
  int sweep_seeds = 10;
  std::uint64_t first_seed = 1;
  std::string sweep_out = "sweep_out";
  std::string config_dir;
  int jobs = default_jobs();
  sweep->add_option("--scene", sweep_scenes, "Scene list (e.g. 1,3) or all");
  sweep->add_option("--seeds", sweep_seeds, "Seeds per scene")->check(CLI::PositiveNumber);
  sweep->add_option("--first-seed", first_seed, "First seed");
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--config-dir", config_dir, "Directory holding scene<N>.cfg (default: built-in presets)");
  sweep->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  // compare-bp
  auto* compare = app.add_subcommand("compare-bp", "Online FISTA vs back-projection at a fixed pulse count");
  std::string compare_scenes = "all";
  int compare_pulses = 10;
  std::uint64_t compare_seed = 1;
  std::string compare_out = "compare_out";
  compare->add_option("--scene", compare_scenes, "Scene list or all");
  compare->add_option("--pulses", compare_pulses, "Pulses to fire")->check(CLI::PositiveNumber);
  compare->add_option("--seed", compare_seed, "Seed");
  compare->add_option("--out", compare_out, "Output directory");

  // dict-gallery
  auto* gallery = app.add_subcommand("dict-gallery", "Montage of dictionary atoms as a PGM");
  int gallery_scene = 1;
  int gallery_count = 24;
  int gallery_columns = 8;
  std::string gallery_out = "atoms.pgm";
  std::vector<int> gallery_lengths;
  std::vector<double> gallery_rotations;
  int gallery_step = 1;
  gallery->add_option("--scene", gallery_scene, "Scene whose dictionary to draw")->check(CLI::Range(1, 4));
  gallery->add_option("--lengths", gallery_lengths, "Custom edgelet lengths")->delimiter(',');
  gallery->add_option("--rotations-deg", gallery_rotations, "Custom rotations in degrees")->delimiter(',');
  gallery->add_option("--count", gallery_count, "Atoms to draw")->check(CLI::PositiveNumber);
  gallery->add_option("--stride", gallery_step, "Draw every k-th atom")->check(CLI::PositiveNumber);
  gallery->add_option("--columns", gallery_columns, "Tiles per row")->check(CLI::PositiveNumber);
  gallery->add_option("--out", gallery_out, "Output PGM path");

  // memory-table
  auto* memory = app.add_subcommand("memory-table", "Stored-value counts for batch and online FISTA");
  std::int64_t mem_m = 0, mem_n = 0, mem_nr = 0, mem_pulses = 0;
  memory->add_option("--M", mem_m, "Atoms")->required()->check(CLI::PositiveNumber);
  memory->add_option("--N", mem_n, "Pixels")->required()->check(CLI::PositiveNumber);
  memory->add_option("--Nr", mem_nr, "Samples per pulse")->required()->check(CLI::PositiveNumber);
  memory->add_option("--n", mem_pulses, "Pulses")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "osar: usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      ExperimentConfig cfg = load_config(config_path);
      if (seed_opt->count() > 0) cfg.seed = run_seed;
      const ExperimentTrace trace = run_experiment(cfg);
      write_run_outputs(run_out, cfg, trace);
      out << "scene=" << to_int(cfg.scene) << " seed=" << cfg.seed << " pulses=" << trace.rows.size()
          << " termination=" << to_string(trace.termination);
      if (!trace.rows.empty())
        out << " n_large=" << trace.rows.back().n_large
            << " snr_online_db=" << format_db(trace.rows.back().snr_online_db)
            << " gain_db=" << format_db(trace.rows.back().gain_db);
      out << " out=" << run_out << '\n';
      return kExitOk;
    }

    if (sweep->parsed()) {
      std::vector<ExperimentConfig> configs;
      for (SceneId id : parse_scene_list(sweep_scenes)) {
        const ExperimentConfig base =
            config_dir.empty() ? preset_config(id)
                               : load_config((std::filesystem::path(config_dir) / (to_string(id) + ".cfg")).string());
        for (int s = 0; s < sweep_seeds; ++s) {
          ExperimentConfig c = base;
          c.seed = first_seed + static_cast<std::uint64_t>(s);
          configs.push_back(c);
        }
      }
      const auto traces = run_many(configs, jobs);
      std::filesystem::create_directories(sweep_out);
      const std::filesystem::path dir(sweep_out);
      auto counts = open_out(dir / "coefficients.csv");
      auto gains = open_out(dir / "snr_gain.csv");
      auto summary = open_out(dir / "summary.csv");
      counts << "scene,seed,pulse_index,position_index,n_large\n";
      gains << "scene,seed,pulse_index,position_index,snr_online_db,snr_bp_db,gain_db\n";
      summary << "scene,seed,pulses,termination,n_large,residual,snr_online_db,gain_db\n";
      for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& c = configs[i];
        const auto& t = traces[i];
        for (const auto& r : t.rows) {
          counts << to_int(c.scene) << ',' << c.seed << ',' << r.pulse_index << ',' << r.position_index << ','
                 << r.n_large << '\n';
          gains << to_int(c.scene) << ',' << c.seed << ',' << r.pulse_index << ',' << r.position_index << ','
                << format_db(r.snr_online_db) << ',' << format_db(r.snr_bp_db) << ',' << format_db(r.gain_db)
                << '\n';
        }
        const TraceRow last = t.rows.empty() ? TraceRow{} : t.rows.back();
        summary << to_int(c.scene) << ',' << c.seed << ',' << t.rows.size() << ',' << to_string(t.termination)
                << ',' << last.n_large << ',' << last.residual << ',' << format_db(last.snr_online_db) << ','
                << format_db(last.gain_db) << '\n';
        out << "scene=" << to_int(c.scene) << " seed=" << c.seed << " pulses=" << t.rows.size()
            << " termination=" << to_string(t.termination) << " n_large=" << last.n_large << '\n';
      }
      return kExitOk;
    }

    if (compare->parsed()) {
      std::filesystem::create_directories(compare_out);
      for (SceneId id : parse_scene_list(compare_scenes)) {
        ExperimentConfig cfg = preset_config(id);
        cfg.seed = compare_seed;
        cfg.max_pulses = compare_pulses;
        cfg.termination = TerminationMode::Disabled;
        const ExperimentTrace t = run_experiment(cfg);
        if (t.rows.empty()) throw std::runtime_error("schedule fired no pulses");
        const auto& last = t.rows.back();
        const RealMatrix pair = side_by_side(to_image(t.online_image, cfg.side_pixels),
                                             to_image(t.bp_magnitude, cfg.side_pixels));
        const auto name = "compare_" + to_string(id);
        write_pgm_file((std::filesystem::path(compare_out) / (name + ".pgm")).string(), pair);
        out << "scene=" << to_int(id) << " pulses=" << last.pulse_index
            << " snr_online_db=" << format_db(last.snr_online_db) << " snr_bp_db=" << format_db(last.snr_bp_db)
            << " gain_db=" << format_db(last.gain_db) << '\n';
      }
      return kExitOk;
    }

    if (gallery->parsed()) {
      DictionarySpec spec = dictionary_for_scene(scene_from_int(gallery_scene), kDefaultSidePixels);
      spec.require_overcomplete = false;
      if (!gallery_lengths.empty()) spec.lengths = gallery_lengths;
      if (!gallery_rotations.empty()) {
        spec.rotations.clear();
        for (double d : gallery_rotations) spec.rotations.push_back(deg_to_rad(d));
      }
      const EdgeletDictionary dict = build_dictionary(spec);
      std::vector<std::vector<Index>> pixels;
      std::vector<EdgeletParams> params;
      for (Index j = 0; j < dict.atoms() && static_cast<int>(params.size()) < gallery_count; j += gallery_step) {
        params.push_back(dict.params()[static_cast<std::size_t>(j)]);
        pixels.push_back(dict.atom_pixels(j));
      }
      const EdgeletDictionary picked(dict.side(), params, pixels);
      write_pgm_file(gallery_out, atom_gallery(picked, picked.atoms(), gallery_columns));
      out << "atoms_total=" << dict.atoms() << " drawn=" << picked.atoms() << " out=" << gallery_out << '\n';
      return kExitOk;
    }

    if (memory->parsed()) {
      const auto batch = memory_values(MemoryMethod::BatchFista, mem_m, mem_n, mem_nr, mem_pulses);
      const auto online = memory_values(MemoryMethod::OnlineFista, mem_m, mem_n, mem_nr, mem_pulses);
      out << "method,values_stored\n";
      out << "batch_fista," << batch.values_stored << '\n';
      out << "online_fista," << online.values_stored << '\n';
      out << "online_below_batch_from_n=" << online_crossover_pulses(mem_m, mem_n, mem_nr) << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "osar: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "osar: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace osar
