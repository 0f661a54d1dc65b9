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

#include "shdoa/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "shdoa/encode.hpp"
#include "shdoa/errors.hpp"
#include "shdoa/lra.hpp"
#include "shdoa/music.hpp"
#include "shdoa/rng.hpp"
#include "shdoa/svg.hpp"

namespace shdoa {

namespace {

struct SceneJob {
  std::size_t condition = 0;  // index into the (t60, snr) grid
  double t60_s = 0.0;
  double snr_db = 0.0;
  int run = 0;
};

struct SceneOutcome {
  std::vector<TrialResult> trials;
  std::string failure;  // empty on success
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return out;
}

SceneSpec make_scene(const SweepConfig& config, const SceneJob& job) {
  SceneSpec scene;
  scene.room.dims_m = config.room_dims_m;
  scene.room.t60_s = job.t60_s;
  scene.room.speed_of_sound = config.speed_of_sound_mps;
  scene.source_distance_m = config.source_distance_m;
  scene.snr_db = job.snr_db;
  scene.duration_s = config.duration_s;
  scene.sample_rate = config.sample_rate_hz;
  scene.signal = config.signal;
  scene.seed = derive_seed(config.master_seed,
                           {job.condition, static_cast<std::uint64_t>(job.run), 1});

  // Random placement: array center inside an inset box that keeps the 2 m
  // source sphere in the room, then a uniform random source direction.
  Rng rng(derive_seed(config.master_seed,
                      {job.condition, static_cast<std::uint64_t>(job.run), 0}));
  const double inset = config.source_distance_m + 0.3;
  for (int axis = 0; axis < 3; ++axis) {
    const double lo = inset, hi = config.room_dims_m(axis) - inset;
    if (hi <= lo)
      throw ConfigError("room too small for the source-distance protocol");
    scene.array_center_m(axis) = rng.uniform(lo, hi);
  }
  const Direction doa = rng.direction();
  scene.source_theta_deg = rad2deg(doa.theta);
  scene.source_phi_deg = rad2deg(doa.phi);
  return scene;
}

SceneOutcome process_scene(const SweepConfig& config, const SceneJob& job,
                           const ArrayGeometry& geom,
                           const MdpDictionary& dict) {
  SceneOutcome outcome;
  try {
    const SceneSpec scene = make_scene(config, job);
    const SimulatedScene sim = simulate_scene(scene, geom);

    const Spectrogram spec = stft_forward(sim.noisy, config.window_size,
                                          config.overlap, config.fft_size);
    const Spectrogram band =
        select_band(spec, config.band_lo_hz, config.band_hi_hz);
    const std::vector<CoefficientMatrix> blocks =
        encode_blocks(band, geom, config.order, config.block_s,
                      config.speed_of_sound_mps, config.max_eq_gain_db);

    const int fpb =
        frames_per_block(config.block_s, band.sample_rate, band.hop);
    const std::vector<int> keep =
        active_blocks(sim.clean, config.window_size, band.hop, fpb,
                      config.trim_threshold_db);

    for (const std::string& method : config.methods) {
      for (int b : keep) {
        DoaEstimate est;
        if (method == "shd-lra")
          est = localize_block(blocks[static_cast<std::size_t>(b)], dict);
        else if (method == "shd-music")
          est = shd_music(blocks[static_cast<std::size_t>(b)], dict, 1);
        else
          throw ConfigError("unknown method: " + method);

        TrialResult t = make_trial(sim.true_doa, est.direction);
        t.method = method;
        t.t60_s = job.t60_s;
        t.snr_db = job.snr_db;
        t.run = job.run;
        t.block = b;
        outcome.trials.push_back(std::move(t));
      }
    }
  } catch (const std::exception& e) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "scene t60=%g snr=%g run=%d failed: %s",
                  job.t60_s, job.snr_db, job.run, e.what());
    outcome.failure = buf;
  }
  return outcome;
}

}  // namespace

std::vector<int> active_blocks(const MultichannelSignal& clean, int window_size,
                               int hop, int fpb, double threshold_db) {
  const Eigen::Index block_span =
      static_cast<Eigen::Index>(fpb - 1) * hop + window_size;
  const int n_blocks =
      static_cast<int>((clean.length() - window_size) / hop + 1) / fpb;

  std::vector<double> rms(static_cast<std::size_t>(n_blocks));
  double peak = 0.0;
  for (int b = 0; b < n_blocks; ++b) {
    const Eigen::Index start = static_cast<Eigen::Index>(b) * fpb * hop;
    const Eigen::Index span = std::min(block_span, clean.length() - start);
    rms[static_cast<std::size_t>(b)] = std::sqrt(
        clean.samples.middleCols(start, span).array().square().mean());
    peak = std::max(peak, rms[static_cast<std::size_t>(b)]);
  }

  std::vector<int> keep;
  const double floor = peak * std::pow(10.0, -threshold_db / 20.0);
  for (int b = 0; b < n_blocks; ++b)
    if (rms[static_cast<std::size_t>(b)] >= floor) keep.push_back(b);
  return keep;
}

SweepReport run_sweep(const SweepConfig& config, const ArrayGeometry& geom,
                      const MdpDictionary& dict) {
  if (config.runs < 1) throw ConfigError("sweep: runs must be >= 1");
  if (config.methods.empty()) throw ConfigError("sweep: no methods enabled");
  if (dict.order != config.order)
    throw ConfigError("sweep: dictionary order does not match config order");
  geom.validate(config.order);

  std::vector<SceneJob> jobs;
  std::size_t condition = 0;
  for (double t60 : config.t60_s) {
    for (double snr : config.snr_db) {
      for (int run = 0; run < config.runs; ++run)
        jobs.push_back({condition, t60, snr, run});
      ++condition;
    }
  }

  std::vector<SceneOutcome> outcomes(jobs.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(
      config.jobs > 0 ? static_cast<unsigned>(config.jobs) : hw,
      static_cast<unsigned>(jobs.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      outcomes[i] = process_scene(config, jobs[i], geom, dict);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  SweepReport report;
  for (const SceneOutcome& o : outcomes) {
    if (!o.failure.empty()) {
      ++report.failed_scenes;
      report.failures.push_back(o.failure);
      continue;
    }
    report.trials.insert(report.trials.end(), o.trials.begin(), o.trials.end());
  }
  report.summary = summarize_trials(report.trials, config);
  return report;
}

std::vector<ConditionSummary> summarize_trials(
    const std::vector<TrialResult>& trials, const SweepConfig& config) {
  std::vector<ConditionSummary> out;
  for (const std::string& method : config.methods) {
    for (double t60 : config.t60_s) {
      for (double snr : config.snr_db) {
        ConditionSummary s;
        s.method = method;
        s.t60_s = t60;
        s.snr_db = snr;

        std::vector<double> pd_runs, rmse_runs;
        for (int run = 0; run < config.runs; ++run) {
          std::vector<TrialResult> cell;
          for (const TrialResult& t : trials)
            if (t.method == method && t.t60_s == t60 && t.snr_db == snr &&
                t.run == run)
              cell.push_back(t);
          if (cell.empty()) continue;
          s.blocks += static_cast<int>(cell.size());
          ++s.runs;
          pd_runs.push_back(probability_of_detection(cell));
          if (const auto rmse = doa_rmse(cell)) rmse_runs.push_back(*rmse);
        }
        if (s.runs == 0) continue;
        const MeanStd pd = mean_std(pd_runs);
        s.pd_mean = pd.mean;
        s.pd_std = pd.std;
        if (!rmse_runs.empty()) {
          const MeanStd rm = mean_std(rmse_runs);
          s.rmse_mean = rm.mean;
          s.rmse_std = rm.std;
        }
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

void write_trials_csv(const std::string& path,
                      const std::vector<TrialResult>& trials) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open CSV for writing: " + path);
  out << "method,t60_s,snr_db,run,block,psi_e_deg,anomalous\n";
  char buf[160];
  for (const TrialResult& t : trials) {
    std::snprintf(buf, sizeof(buf), "%s,%.3f,%.1f,%d,%d,%.6f,%d\n",
                  t.method.c_str(), t.t60_s, t.snr_db, t.run, t.block,
                  t.psi_e_deg, t.anomalous ? 1 : 0);
    out << buf;
  }
  if (!out) throw IoError("failed writing CSV: " + path);
}

void write_summary_csv(const std::string& path,
                       const std::vector<ConditionSummary>& summary) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open CSV for writing: " + path);
  out << "method,t60_s,snr_db,runs,blocks,pd_mean,pd_std,rmse_mean,rmse_std\n";
  char buf[240];
  for (const ConditionSummary& s : summary) {
    std::snprintf(buf, sizeof(buf), "%s,%.3f,%.1f,%d,%d,%.6f,%.6f",
                  s.method.c_str(), s.t60_s, s.snr_db, s.runs, s.blocks,
                  s.pd_mean, s.pd_std);
    out << buf;
    if (s.rmse_mean) {
      std::snprintf(buf, sizeof(buf), ",%.6f,%.6f", *s.rmse_mean,
                    s.rmse_std.value_or(0.0));
      out << buf;
    } else {
      out << ",,";  // undefined: every estimate anomalous
    }
    out << "\n";
  }
  if (!out) throw IoError("failed writing CSV: " + path);
}

void write_report_svgs(const std::string& directory, const SweepReport& report,
                       const SweepConfig& config) {
  char name[64];
  for (double t60 : config.t60_s) {
    BarChart pd, rmse;
    pd.x_label = rmse.x_label = "SNR (dB)";
    pd.y_label = "PD";
    rmse.y_label = "RMSE (deg)";
    std::snprintf(name, sizeof(name), "T60 = %.2f s", t60);
    pd.title = std::string("Probability of detection, ") + name;
    rmse.title = std::string("DOA RMSE, ") + name;
    pd.y_max = 1.05;
    for (double snr : config.snr_db) {
      std::snprintf(name, sizeof(name), "%g", snr);
      pd.group_labels.push_back(name);
      rmse.group_labels.push_back(name);
    }
    for (const std::string& method : config.methods) {
      pd.series_names.push_back(method);
      rmse.series_names.push_back(method);
      std::vector<double> pdv, pde, rv, re;
      for (double snr : config.snr_db) {
        double pm = 0.0, ps = -1.0, rm = 0.0, rs = -1.0;
        for (const ConditionSummary& s : report.summary) {
          if (s.method != method || s.t60_s != t60 || s.snr_db != snr) continue;
          pm = s.pd_mean;
          ps = s.pd_std;
          rm = s.rmse_mean.value_or(0.0);
          rs = s.rmse_mean ? s.rmse_std.value_or(0.0) : -1.0;
        }
        pdv.push_back(pm);
        pde.push_back(ps);
        rv.push_back(rm);
        re.push_back(rs);
      }
      pd.values.push_back(pdv);
      pd.errors.push_back(pde);
      rmse.values.push_back(rv);
      rmse.errors.push_back(re);
    }
    std::snprintf(name, sizeof(name), "/pd_t60_%.2fs.svg", t60);
    write_bar_chart_svg(directory + name, pd);
    std::snprintf(name, sizeof(name), "/rmse_t60_%.2fs.svg", t60);
    write_bar_chart_svg(directory + name, rmse);
  }
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sweep config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("sweep config parse error in " + path + ": " + e.what());
  }

  SweepConfig c;
  try {
    if (j.contains("room_dims_m")) {
      const auto dims = j.at("room_dims_m");
      c.room_dims_m = Vec3(dims.at(0).get<double>(), dims.at(1).get<double>(),
                           dims.at(2).get<double>());
    }
    if (j.contains("t60_s")) c.t60_s = j.at("t60_s").get<std::vector<double>>();
    if (j.contains("snr_db"))
      c.snr_db = j.at("snr_db").get<std::vector<double>>();
    c.runs = j.value("runs", c.runs);
    c.duration_s = j.value("duration_s", c.duration_s);
    c.sample_rate_hz = j.value("sample_rate_hz", c.sample_rate_hz);
    c.speed_of_sound_mps = j.value("speed_of_sound_mps", c.speed_of_sound_mps);
    c.source_distance_m = j.value("source_distance_m", c.source_distance_m);
    c.window_size = j.value("window_size", c.window_size);
    c.fft_size = j.value("fft_size", c.fft_size);
    c.overlap = j.value("overlap", c.overlap);
    c.band_lo_hz = j.value("band_lo_hz", c.band_lo_hz);
    c.band_hi_hz = j.value("band_hi_hz", c.band_hi_hz);
    c.order = j.value("order", c.order);
    c.elev_step_deg = j.value("elev_step_deg", c.elev_step_deg);
    c.azim_step_deg = j.value("azim_step_deg", c.azim_step_deg);
    c.block_s = j.value("block_s", c.block_s);
    c.max_eq_gain_db = j.value("max_eq_gain_db", c.max_eq_gain_db);
    c.trim_threshold_db = j.value("trim_threshold_db", c.trim_threshold_db);
    if (j.contains("methods"))
      c.methods = j.at("methods").get<std::vector<std::string>>();
    c.signal = j.value("signal", c.signal);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.jobs = j.value("jobs", c.jobs);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("sweep config " + path + ": " + e.what());
  }
  return c;
}

}  // namespace shdoa
