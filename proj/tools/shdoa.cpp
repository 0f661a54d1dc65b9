// Copyright 2026 The shdoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: build MDP dictionaries, simulate scenes, localize
// recordings and run evaluation sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "shdoa/encode.hpp"
#include "shdoa/errors.hpp"
#include "shdoa/lra.hpp"
#include "shdoa/music.hpp"
#include "shdoa/room.hpp"
#include "shdoa/sweep.hpp"
#include "shdoa/wav.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

std::string default_output_dir() {
  if (const char* env = std::getenv("SHDOA_OUTPUT_DIR")) return env;
  return ".";
}

shdoa::ArrayGeometry resolve_geometry(const std::string& path) {
  if (path.empty()) return shdoa::builtin_array32();
  return shdoa::load_geometry(path);
}

struct GridSpec {
  double elev_step_deg = 3.0;
  double azim_step_deg = 2.0;
  int order = 3;
};

shdoa::MdpDictionary resolve_dictionary(const std::string& path,
                                        const GridSpec& grid) {
  if (path.empty())
    return shdoa::build_dictionary(grid.elev_step_deg, grid.azim_step_deg,
                                   grid.order);
  return shdoa::load_dictionary(path);
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw shdoa::IoError("cannot create output directory: " + dir);
}

int cmd_dict(const GridSpec& grid, const std::string& output) {
  const shdoa::MdpDictionary dict =
      shdoa::build_dictionary(grid.elev_step_deg, grid.azim_step_deg, grid.order);
  shdoa::save_dictionary(dict, output);
  std::printf("entries=%zu checksum=%016llx file=%s\n", dict.size(),
              static_cast<unsigned long long>(shdoa::dictionary_checksum(dict)),
              output.c_str());
  return kExitOk;
}

int cmd_simulate(const std::string& scene_path, const std::string& geometry,
                 const std::string& outdir) {
  const shdoa::SceneSpec scene = shdoa::load_scene(scene_path);
  const shdoa::ArrayGeometry geom = resolve_geometry(geometry);
  const shdoa::SimulatedScene sim = shdoa::simulate_scene(scene, geom);
  ensure_directory(outdir);

  const std::string wav_path = outdir + "/scene.wav";
  shdoa::write_wav(wav_path, sim.noisy);

  // Truth sidecar: the source is static, every block carries the same DOA.
  const std::string truth_path = outdir + "/scene_truth.csv";
  std::ofstream truth(truth_path);
  if (!truth) throw shdoa::IoError("cannot open " + truth_path);
  truth << "block,time_s,theta_deg,phi_deg\n";
  const int hop = 256;
  const int fpb = shdoa::frames_per_block(0.3, scene.sample_rate, hop);
  const int n_frames =
      static_cast<int>((sim.noisy.length() - 512) / hop + 1);
  char buf[128];
  for (int b = 0; b < n_frames / fpb; ++b) {
    std::snprintf(buf, sizeof(buf), "%d,%.3f,%.3f,%.3f\n", b,
                  b * fpb * hop / scene.sample_rate,
                  shdoa::rad2deg(sim.true_doa.theta),
                  shdoa::rad2deg(sim.true_doa.phi));
    truth << buf;
  }
  std::printf("wav=%s truth=%s channels=%d samples=%lld\n", wav_path.c_str(),
              truth_path.c_str(), sim.noisy.channels(),
              static_cast<long long>(sim.noisy.length()));
  return kExitOk;
}

struct LocalizeOptions {
  std::string input;
  std::string geometry;
  std::string dict_path;
  GridSpec grid;
  std::string method = "shd-lra";
  std::string output;
  double band_lo_hz = 1000.0;
  double band_hi_hz = 2500.0;
  double block_s = 0.3;
  int window_size = 512;
  int fft_size = 512;
  double overlap = 0.5;
  double max_eq_gain_db = 40.0;
  double speed_of_sound = shdoa::kSpeedOfSound;
};

int cmd_localize(const LocalizeOptions& opt) {
  if (opt.method != "shd-lra" && opt.method != "shd-music" &&
      opt.method != "all")
    throw shdoa::ConfigError("unknown method: " + opt.method +
                             " (want shd-lra|shd-music|all)");

  const shdoa::ArrayGeometry geom = resolve_geometry(opt.geometry);
  const shdoa::MdpDictionary dict = resolve_dictionary(opt.dict_path, opt.grid);
  if (dict.order != opt.grid.order)
    throw shdoa::ConfigError("dictionary order does not match --order");

  const shdoa::MultichannelSignal sig = shdoa::read_wav(opt.input);
  if (sig.channels() != geom.count())
    throw shdoa::ConfigError("WAV channel count does not match geometry");

  const shdoa::Spectrogram spec =
      shdoa::stft_forward(sig, opt.window_size, opt.overlap, opt.fft_size);
  const shdoa::Spectrogram band =
      shdoa::select_band(spec, opt.band_lo_hz, opt.band_hi_hz);
  const auto blocks =
      shdoa::encode_blocks(band, geom, opt.grid.order, opt.block_s,
                           opt.speed_of_sound, opt.max_eq_gain_db);

  std::ofstream out;
  const bool to_file = !opt.output.empty();
  if (to_file) {
    out.open(opt.output);
    if (!out) throw shdoa::IoError("cannot open " + opt.output);
  }
  std::ostream& os = to_file ? out : std::cout;

  os << "method,block,time_s,theta_deg,phi_deg,residual,confidence\n";
  std::vector<std::string> methods;
  if (opt.method == "all")
    methods = {"shd-lra", "shd-music"};
  else
    methods = {opt.method};

  char buf[192];
  for (const std::string& method : methods) {
    for (const shdoa::CoefficientMatrix& block : blocks) {
      const shdoa::DoaEstimate est = method == "shd-lra"
                                         ? shdoa::localize_block(block, dict)
                                         : shdoa::shd_music(block, dict, 1);
      std::snprintf(buf, sizeof(buf), "%s,%d,%.3f,%.3f,%.3f,%.6e,%.6f\n",
                    method.c_str(), est.block_index, est.block_time_s,
                    shdoa::rad2deg(est.direction.theta),
                    shdoa::rad2deg(est.direction.phi), est.residual,
                    est.confidence);
      os << buf;
    }
  }
  if (to_file && !out) throw shdoa::IoError("failed writing " + opt.output);
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& outdir,
              int runs_override, long long seed_override, int jobs_override) {
  shdoa::SweepConfig config = shdoa::load_sweep_config(config_path);
  if (runs_override > 0) config.runs = runs_override;
  if (seed_override >= 0)
    config.master_seed = static_cast<std::uint64_t>(seed_override);
  if (jobs_override > 0) config.jobs = jobs_override;

  const shdoa::ArrayGeometry geom = shdoa::builtin_array32();
  const shdoa::MdpDictionary dict = shdoa::build_dictionary(
      config.elev_step_deg, config.azim_step_deg, config.order);

  const shdoa::SweepReport report = shdoa::run_sweep(config, geom, dict);
  ensure_directory(outdir);
  shdoa::write_trials_csv(outdir + "/trials.csv", report.trials);
  shdoa::write_summary_csv(outdir + "/summary.csv", report.summary);
  shdoa::write_report_svgs(outdir, report, config);

  for (const std::string& f : report.failures)
    std::fprintf(stderr, "W_SCENE: %s\n", f.c_str());
  std::printf("conditions=%zu trials=%zu failed_scenes=%d outdir=%s\n",
              report.summary.size(), report.trials.size(),
              report.failed_scenes, outdir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sound-source DOA estimation in the spherical-harmonics "
               "domain via normalized-coefficient low-rank approximation"};
  app.require_subcommand(1);

  // dict
  GridSpec grid;
  std::string dict_output = default_output_dir() + "/dictionary.mdp";
  CLI::App* dict = app.add_subcommand("dict", "Build and cache an MDP dictionary");
  dict->add_option("--elev-step-deg", grid.elev_step_deg, "Elevation grid step");
  dict->add_option("--azim-step-deg", grid.azim_step_deg, "Azimuth grid step");
  dict->add_option("--order,-N", grid.order, "SH order");
  dict->add_option("--output,-o", dict_output, "Output file");

  // simulate
  std::string scene_path, sim_geometry;
  std::string sim_outdir = default_output_dir();
  CLI::App* simulate =
      app.add_subcommand("simulate", "Render one scene to WAV + truth sidecar");
  simulate->add_option("--scene", scene_path, "Scene JSON file")->required();
  simulate->add_option("--geometry", sim_geometry,
                       "Geometry file (default: bundled 32-capsule rigid)");
  simulate->add_option("--output,-o", sim_outdir, "Output directory");

  // localize
  LocalizeOptions loc;
  CLI::App* localize =
      app.add_subcommand("localize", "Estimate per-block DOAs from a WAV file");
  localize->add_option("--input,-i", loc.input, "Multichannel WAV")->required();
  localize->add_option("--geometry", loc.geometry, "Geometry file");
  localize->add_option("--dict", loc.dict_path, "Dictionary cache file");
  localize->add_option("--elev-step-deg", loc.grid.elev_step_deg, "Grid step");
  localize->add_option("--azim-step-deg", loc.grid.azim_step_deg, "Grid step");
  localize->add_option("--order,-N", loc.grid.order, "SH order");
  localize->add_option("--method", loc.method, "shd-lra|shd-music|all");
  localize->add_option("--band-lo-hz", loc.band_lo_hz, "Band low edge");
  localize->add_option("--band-hi-hz", loc.band_hi_hz, "Band high edge");
  localize->add_option("--block-s", loc.block_s, "Block duration");
  localize->add_option("--max-eq-gain-db", loc.max_eq_gain_db,
                       "Radial equalization clamp");
  localize->add_option("--output,-o", loc.output, "CSV output (default stdout)");

  // sweep
  std::string sweep_config;
  std::string sweep_outdir = default_output_dir();
  int runs_override = 0, jobs_override = 0;
  long long seed_override = -1;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run the SNR x T60 evaluation sweep");
  sweep->add_option("--config", sweep_config, "Sweep JSON config")->required();
  sweep->add_option("--output,-o", sweep_outdir, "Output directory");
  sweep->add_option("--runs", runs_override, "Override run count");
  sweep->add_option("--master-seed", seed_override, "Override master seed");
  sweep->add_option("--jobs,-j", jobs_override, "Parallel scene workers");

  try {
    app.parse(argc, argv);
    if (*dict) return cmd_dict(grid, dict_output);
    if (*simulate) return cmd_simulate(scene_path, sim_geometry, sim_outdir);
    if (*localize) return cmd_localize(loc);
    if (*sweep)
      return cmd_sweep(sweep_config, sweep_outdir, runs_override,
                       seed_override, jobs_override);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "E_CONFIG: %s\n", e.what());
    return kExitConfig;
  } catch (const shdoa::ConfigError& e) {
    std::fprintf(stderr, "E_CONFIG: %s\n", e.what());
    return kExitConfig;
  } catch (const shdoa::IoError& e) {
    std::fprintf(stderr, "E_IO: %s\n", e.what());
    return kExitIo;
  } catch (const shdoa::NumericError& e) {
    std::fprintf(stderr, "E_NUMERIC: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "E_NUMERIC: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "E_CONFIG: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
