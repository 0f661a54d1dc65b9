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
#include <string>
#include <vector>

#include "shdoa/geometry.hpp"
#include "shdoa/stft.hpp"
#include "shdoa/types.hpp"

namespace shdoa {

struct RoomSpec {
  Vec3 dims_m{10.0, 8.0, 6.0};
  double t60_s = 0.0;
  double speed_of_sound = kSpeedOfSound;

  double volume() const { return dims_m.prod(); }
  double surface_area() const {
    return 2.0 * (dims_m.x() * dims_m.y() + dims_m.x() * dims_m.z() +
                  dims_m.y() * dims_m.z());
  }
};

struct ScenePlacement {
  Vec3 array_center_m = Vec3::Zero();
  std::vector<Vec3> source_positions_m;
};

struct ImageSource {
  Vec3 position_m = Vec3::Zero();
  double gain = 1.0;  // cumulative wall reflection gain
  int order = 0;
};

/// Uniform wall reflection coefficient from the Sabine absorption that
/// realizes the requested T60: beta = sqrt(1 - 0.161 V / (S T60)).
double sabine_beta(const RoomSpec& room);

/// Shoebox image lattice for one source. Truncated when the cumulative
/// reflection gain falls gain_floor_db below the direct path, or past
/// max_order when that is >= 0. T60 = 0 yields exactly the direct image.
std::vector<ImageSource> image_sources(const RoomSpec& room,
                                       const Vec3& source_m,
                                       int max_order = -1,
                                       double gain_floor_db = 60.0);

enum class RenderPath { Auto, Exact, Gridded };

/// Capsule pressures (Q x fft_size/2+1, one-sided) for a source-signal
/// spectrum on the FFT bin grid: far-field modal response per image with
/// spherical-wave gain exp(-ikd)/(4 pi d). `Auto` evaluates small image
/// sets exactly per bin and large ones through a windowed-sinc delay grid
/// plus one FFT per SH channel.
CMat render_array(const std::vector<ImageSource>& images,
                  const ArrayGeometry& geom, const Vec3& array_center_m,
                  const CVec& source_spectrum, double sample_rate,
                  int fft_size, int render_order,
                  double speed_of_sound = kSpeedOfSound,
                  RenderPath path = RenderPath::Auto);

/// Suggested rendering order for a band extending to f_max.
int default_render_order(double f_max_hz, double radius_m,
                         double speed_of_sound = kSpeedOfSound);

/// Adds i.i.d. white Gaussian noise per channel, sized so that
/// 10*log10(mean channel power / noise variance) = snr_db. Deterministic
/// under the seed.
MultichannelSignal add_noise_at_snr(const MultichannelSignal& sig,
                                    double snr_db, std::uint64_t seed);

/// Unit-RMS stationary noise with a speech-like long-term spectrum.
RVec speech_shaped_noise(Eigen::Index samples, double sample_rate,
                         std::uint64_t seed);

/// One simulation unit: room, placement, noise level and source signal.
struct SceneSpec {
  RoomSpec room;
  Vec3 array_center_m{5.0, 4.0, 3.0};
  double source_theta_deg = 90.0;
  double source_phi_deg = 0.0;
  double source_distance_m = 2.0;
  double snr_db = std::numeric_limits<double>::infinity();  // inf = clean
  double duration_s = 3.2;
  double sample_rate = 8000.0;
  std::uint64_t seed = 1;
  std::string signal = "speech_noise";  // or a WAV path
  int max_image_order = -1;
  double image_gain_floor_db = 60.0;
};

struct SimulatedScene {
  MultichannelSignal clean;
  MultichannelSignal noisy;
  Direction true_doa;
  Vec3 source_position_m = Vec3::Zero();
};

/// Renders the scene through the image-source model and adds noise.
/// render_order < 0 picks default_render_order at Nyquist.
SimulatedScene simulate_scene(const SceneSpec& scene,
                              const ArrayGeometry& geom,
                              int render_order = -1);

/// JSON scene file (unit-suffixed keys; see README).
SceneSpec load_scene(const std::string& path);

}  // namespace shdoa
