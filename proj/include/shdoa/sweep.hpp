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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shdoa/metrics.hpp"
#include "shdoa/room.hpp"
#include "shdoa/sh.hpp"

namespace shdoa {

/// Sweep over (T60, SNR, run) with random scenes per run; every 0.3 s
/// block yields one DOA estimate per enabled method.
struct SweepConfig {
  Vec3 room_dims_m{10.0, 8.0, 6.0};
  std::vector<double> t60_s{0.0, 0.5, 1.0};
  std::vector<double> snr_db{5.0, 10.0, 20.0, 40.0};
  int runs = 10;
  double duration_s = 3.2;
  double sample_rate_hz = 8000.0;
  double speed_of_sound_mps = kSpeedOfSound;
  double source_distance_m = 2.0;
  int window_size = 512;
  int fft_size = 512;
  double overlap = 0.5;
  double band_lo_hz = 1000.0;
  double band_hi_hz = 2500.0;
  int order = 3;
  double elev_step_deg = 3.0;
  double azim_step_deg = 2.0;
  double block_s = 0.3;
  double max_eq_gain_db = 40.0;
  double trim_threshold_db = 35.0;
  std::vector<std::string> methods{"shd-lra", "shd-music"};
  std::string signal = "speech_noise";
  std::uint64_t master_seed = 1;
  int jobs = 0;  // 0 = hardware concurrency
};

struct ConditionSummary {
  std::string method;
  double t60_s = 0.0;
  double snr_db = 0.0;
  int runs = 0;
  int blocks = 0;
  double pd_mean = 0.0;
  double pd_std = 0.0;
  std::optional<double> rmse_mean;  // empty when every run was anomalous
  std::optional<double> rmse_std;
};

struct SweepReport {
  std::vector<TrialResult> trials;
  std::vector<ConditionSummary> summary;
  int failed_scenes = 0;
  std::vector<std::string> failures;
};

SweepReport run_sweep(const SweepConfig& config, const ArrayGeometry& geom,
                      const MdpDictionary& dict);

/// Recomputes the per-condition summary from trial rows (aggregation audit).
std::vector<ConditionSummary> summarize_trials(
    const std::vector<TrialResult>& trials, const SweepConfig& config);

void write_trials_csv(const std::string& path,
                      const std::vector<TrialResult>& trials);
void write_summary_csv(const std::string& path,
                       const std::vector<ConditionSummary>& summary);

/// One PD and one RMSE grouped bar chart (SVG) per T60 value.
void write_report_svgs(const std::string& directory, const SweepReport& report,
                       const SweepConfig& config);

SweepConfig load_sweep_config(const std::string& path);

/// Indices of the evaluation blocks whose clean energy stays above
/// peak - threshold dB (speech-activity trimming stand-in).
std::vector<int> active_blocks(const MultichannelSignal& clean, int window_size,
                               int hop, int fpb, double threshold_db);

}  // namespace shdoa
