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

#include "shdoa/room.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "shdoa/errors.hpp"
#include "shdoa/rng.hpp"
#include "shdoa/sh.hpp"
#include "shdoa/special.hpp"
#include "shdoa/wav.hpp"

namespace shdoa {

namespace {

// Images beyond this count go through the gridded delay path.
constexpr std::size_t kExactImageLimit = 64;
// Windowed-sinc half width for fractional delays, in samples.
constexpr int kSincHalfWidth = 32;

void check_room(const RoomSpec& room) {
  if ((room.dims_m.array() <= 0.0).any())
    throw ConfigError("room dimensions must be positive");
  if (room.t60_s < 0.0) throw ConfigError("T60 must be >= 0");
  if (room.speed_of_sound <= 0.0)
    throw ConfigError("speed of sound must be positive");
}

// Per-axis image coordinates with their reflection counts, up to
// max_axis_order reflections.
struct AxisImage {
  double coord;
  int order;
};

std::vector<AxisImage> axis_images(double source, double dim, int max_order) {
  std::vector<AxisImage> out;
  for (int parity : {0, 1}) {
    for (int n = -(max_order + 2) / 2 - 1; n <= (max_order + 2) / 2 + 1; ++n) {
      const int order = std::abs(2 * n - parity);
      if (order > max_order) continue;
      const double coord = (parity == 0 ? source : -source) + 2.0 * n * dim;
      out.push_back({coord, order});
    }
  }
  return out;
}

// SH-domain reflection response on the FFT bin grid: row p holds
// sum_img gain/(4 pi d) Y*_p(dir_img) exp(-i k d). The exact path sums
// per bin; the gridded path lays windowed-sinc deltas on the time axis
// and runs one FFT per SH channel.
CMat image_field_coeffs(const std::vector<ImageSource>& images,
                        const Vec3& array_center_m, double min_distance_m,
                        int render_order, double sample_rate, int fft_size,
                        double speed_of_sound, RenderPath path) {
  const int c_render = sh_count(render_order);
  const int n_bins = fft_size / 2 + 1;
  const bool exact = path == RenderPath::Exact ||
                     (path == RenderPath::Auto && images.size() <= kExactImageLimit);

  CMat coeffs = CMat::Zero(c_render, exact ? n_bins : fft_size);
  CVec dir_coeffs(c_render);
  for (const ImageSource& img : images) {
    const Vec3 rel = img.position_m - array_center_m;
    const double d = rel.norm();
    if (d <= min_distance_m)
      throw ConfigError("image source inside the array sphere (d = " +
                        std::to_string(d) + " m)");
    const Direction dir = Direction::from_unit_vector(rel);
    dir_coeffs = sh_vector(render_order, dir).conjugate() * (img.gain / (4.0 * kPi * d));

    if (exact) {
      const double dk = 2.0 * kPi * sample_rate / fft_size / speed_of_sound;
      for (int f = 0; f < n_bins; ++f)
        coeffs.col(f) += dir_coeffs * std::exp(Complex(0.0, -dk * f * d));
    } else {
      const double delay = d / speed_of_sound * sample_rate;
      const int lo = static_cast<int>(std::ceil(delay)) - kSincHalfWidth;
      const int hi = static_cast<int>(std::floor(delay)) + kSincHalfWidth;
      for (int t = std::max(0, lo); t <= std::min(fft_size - 1, hi); ++t) {
        const double x = t - delay;
        const double w = 0.5 * (1.0 + std::cos(kPi * x / (kSincHalfWidth + 1)));
        const double sinc = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
        coeffs.col(t) += dir_coeffs * (w * sinc);
      }
    }
  }

  if (exact) return coeffs;

  // One FFT per SH channel; keep the one-sided bins.
  CMat spectrum(c_render, n_bins);
  Eigen::FFT<double> fft;
  std::vector<Complex> in(static_cast<std::size_t>(fft_size));
  std::vector<Complex> out;
  for (int p = 0; p < c_render; ++p) {
    for (int t = 0; t < fft_size; ++t)
      in[static_cast<std::size_t>(t)] = coeffs(p, t);
    fft.fwd(out, in);
    spectrum.row(p) = Eigen::Map<const CVec>(out.data(), n_bins).transpose();
  }
  return spectrum;
}

}  // namespace

double sabine_beta(const RoomSpec& room) {
  check_room(room);
  if (room.t60_s <= 0.0)
    throw ConfigError("sabine_beta: T60 must be > 0 (anechoic rooms bypass it)");
  const double absorption =
      0.161 * room.volume() / (room.surface_area() * room.t60_s);
  if (absorption > 1.0)
    throw ConfigError("T60 too short for this room (Sabine absorption > 1)");
  return std::sqrt(1.0 - absorption);
}

std::vector<ImageSource> image_sources(const RoomSpec& room,
                                       const Vec3& source_m, int max_order,
                                       double gain_floor_db) {
  check_room(room);
  if ((source_m.array() < 0.0).any() ||
      (source_m.array() > room.dims_m.array()).any())
    throw ConfigError("source outside the room");

  if (room.t60_s == 0.0 || max_order == 0) return {{source_m, 1.0, 0}};

  const double beta = sabine_beta(room);
  const double floor_gain = std::pow(10.0, -gain_floor_db / 20.0);
  int order_cap = static_cast<int>(std::log(floor_gain) / std::log(beta));
  if (max_order >= 0) order_cap = std::min(order_cap, max_order);

  const auto xs = axis_images(source_m.x(), room.dims_m.x(), order_cap);
  const auto ys = axis_images(source_m.y(), room.dims_m.y(), order_cap);
  const auto zs = axis_images(source_m.z(), room.dims_m.z(), order_cap);

  std::vector<ImageSource> out;
  for (const AxisImage& xi : xs) {
    for (const AxisImage& yi : ys) {
      if (xi.order + yi.order > order_cap) continue;
      for (const AxisImage& zi : zs) {
        const int order = xi.order + yi.order + zi.order;
        if (order > order_cap) continue;
        const double gain = std::pow(beta, order);
        if (gain < floor_gain) continue;
        out.push_back({Vec3(xi.coord, yi.coord, zi.coord), gain, order});
      }
    }
  }
  return out;
}

int default_render_order(double f_max_hz, double radius_m,
                         double speed_of_sound) {
  const double kr = 2.0 * kPi * f_max_hz / speed_of_sound * radius_m;
  return static_cast<int>(std::ceil(kr)) + 2;
}

CMat render_array(const std::vector<ImageSource>& images,
                  const ArrayGeometry& geom, const Vec3& array_center_m,
                  const CVec& source_spectrum, double sample_rate,
                  int fft_size, int render_order, double speed_of_sound,
                  RenderPath path) {
  if (images.empty()) throw ConfigError("render_array: no image sources");
  const int n_bins = fft_size / 2 + 1;
  if (source_spectrum.size() != n_bins)
    throw ConfigError("render_array: source spectrum must have fft_size/2+1 bins");

  const CMat field =
      image_field_coeffs(images, array_center_m, geom.radius_m, render_order,
                         sample_rate, fft_size, speed_of_sound, path);

  // Radial factors 4 pi i^n b_n(kR) per (channel, bin).
  const int c_render = sh_count(render_order);
  CMat radial(c_render, n_bins);
  for (int f = 0; f < n_bins; ++f) {
    const double k = 2.0 * kPi * (f * sample_rate / fft_size) / speed_of_sound;
    const CVec b = mode_strength_all(render_order, k * geom.radius_m, geom.kind);
    for (int n = 0; n <= render_order; ++n)
      radial.block(n * n, f, 2 * n + 1, 1)
          .setConstant(4.0 * kPi * unit_imag_pow(n) * b(n));
  }

  CMat shd = (radial.array() * field.array()).matrix();
  shd.array().rowwise() *= source_spectrum.transpose().array();
  return sh_matrix(geom, render_order) * shd;  // Q x n_bins
}

MultichannelSignal add_noise_at_snr(const MultichannelSignal& sig,
                                    double snr_db, std::uint64_t seed) {
  const double power = sig.samples.array().square().mean();
  if (!(power > 0.0))
    throw ConfigError("add_noise_at_snr: zero-power signal");
  const double sigma = std::sqrt(power * std::pow(10.0, -snr_db / 10.0));

  MultichannelSignal out = sig;
  for (int ch = 0; ch < sig.channels(); ++ch) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(ch)}));
    for (Eigen::Index t = 0; t < sig.length(); ++t)
      out.samples(ch, t) += sigma * rng.gaussian();
  }
  return out;
}

RVec speech_shaped_noise(Eigen::Index samples, double sample_rate,
                         std::uint64_t seed) {
  if (samples <= 0) throw ConfigError("speech_shaped_noise: empty request");
  int fft_size = 2;
  while (fft_size < samples) fft_size *= 2;

  Rng rng(seed);
  RVec white(fft_size);
  for (int t = 0; t < fft_size; ++t) white(t) = rng.gaussian();

  CVec spec = rfft(white, fft_size);
  for (Eigen::Index f = 0; f < spec.size(); ++f) {
    const double hz = f * sample_rate / fft_size;
    const double highpass = hz * hz / (hz * hz + 120.0 * 120.0);
    const double rolloff = 1.0 / (1.0 + std::pow(hz / 550.0, 1.33));
    spec(f) *= highpass * rolloff;
  }
  RVec shaped = irfft(spec, fft_size).head(samples);
  const double rms = std::sqrt(shaped.array().square().mean());
  return shaped / rms;
}

SimulatedScene simulate_scene(const SceneSpec& scene,
                              const ArrayGeometry& geom, int render_order) {
  check_room(scene.room);
  if (scene.sample_rate <= 0.0) throw ConfigError("scene: sample rate must be > 0");
  if (scene.duration_s <= 0.0) throw ConfigError("scene: duration must be > 0");
  if (scene.source_distance_m <= geom.radius_m)
    throw ConfigError("scene: source must lie outside the array sphere");

  const Direction doa = Direction::from_degrees(scene.source_theta_deg,
                                                scene.source_phi_deg);
  const Vec3 source =
      scene.array_center_m + scene.source_distance_m * doa.unit_vector();
  const Vec3 r{geom.radius_m, geom.radius_m, geom.radius_m};
  if (((scene.array_center_m - r).array() < 0.0).any() ||
      ((scene.array_center_m + r).array() > scene.room.dims_m.array()).any())
    throw ConfigError("scene: array sphere extends outside the room");
  if ((source.array() < 0.0).any() ||
      (source.array() > scene.room.dims_m.array()).any())
    throw ConfigError("scene: source outside the room");

  // Source signal.
  const auto n_samples =
      static_cast<Eigen::Index>(std::llround(scene.duration_s * scene.sample_rate));
  RVec src;
  if (scene.signal == "speech_noise") {
    src = speech_shaped_noise(n_samples, scene.sample_rate,
                              derive_seed(scene.seed, {1}));
  } else {
    const MultichannelSignal wav = read_wav(scene.signal);
    if (wav.sample_rate != scene.sample_rate)
      throw ConfigError("scene: WAV sample rate does not match scene (no resampling)");
    src = wav.samples.row(0).head(std::min(n_samples, wav.length())).transpose();
    if (src.size() < n_samples)
      throw ConfigError("scene: WAV shorter than requested duration");
  }

  const auto images = image_sources(scene.room, source, scene.max_image_order,
                                    scene.image_gain_floor_db);
  double max_dist = 0.0;
  for (const ImageSource& img : images)
    max_dist = std::max(max_dist, (img.position_m - scene.array_center_m).norm());
  const auto tail = static_cast<Eigen::Index>(
      std::ceil(max_dist / scene.room.speed_of_sound * scene.sample_rate));
  int fft_size = 2;
  while (fft_size < n_samples + tail + 2 * kSincHalfWidth + 2) fft_size *= 2;

  if (render_order < 0)
    render_order = default_render_order(scene.sample_rate / 2.0, geom.radius_m,
                                        scene.room.speed_of_sound);

  const CVec src_spec = rfft(src, fft_size);
  const CMat pressures =
      render_array(images, geom, scene.array_center_m, src_spec,
                   scene.sample_rate, fft_size, render_order,
                   scene.room.speed_of_sound);

  SimulatedScene out;
  out.true_doa = doa;
  out.source_position_m = source;
  out.clean.sample_rate = scene.sample_rate;
  out.clean.samples.resize(geom.count(), n_samples);
  for (int q = 0; q < geom.count(); ++q)
    out.clean.samples.row(q) =
        irfft(pressures.row(q).transpose(), fft_size).head(n_samples).transpose();

  out.noisy = std::isinf(scene.snr_db)
                  ? out.clean
                  : add_noise_at_snr(out.clean, scene.snr_db,
                                     derive_seed(scene.seed, {2}));
  return out;
}

SceneSpec load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scene file parse error in " + path + ": " + e.what());
  }

  SceneSpec scene;
  try {
    const auto dims = j.at("room_dims_m");
    scene.room.dims_m = Vec3(dims.at(0).get<double>(), dims.at(1).get<double>(),
                             dims.at(2).get<double>());
    scene.room.t60_s = j.at("t60_s").get<double>();
    scene.room.speed_of_sound = j.value("speed_of_sound_mps", kSpeedOfSound);
    const auto center = j.at("array_center_m");
    scene.array_center_m = Vec3(center.at(0).get<double>(),
                                center.at(1).get<double>(),
                                center.at(2).get<double>());
    scene.source_theta_deg = j.at("source_theta_deg").get<double>();
    scene.source_phi_deg = j.at("source_phi_deg").get<double>();
    scene.source_distance_m = j.value("source_distance_m", 2.0);
    if (j.contains("snr_db"))
      scene.snr_db = j.at("snr_db").get<double>();
    scene.duration_s = j.value("duration_s", 3.2);
    scene.sample_rate = j.value("sample_rate_hz", 8000.0);
    scene.seed = j.value("seed", std::uint64_t{1});
    scene.signal = j.value("signal", std::string("speech_noise"));
    scene.max_image_order = j.value("max_image_order", -1);
    scene.image_gain_floor_db = j.value("image_gain_floor_db", 60.0);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scene file " + path + ": " + e.what());
  }
  return scene;
}

}  // namespace shdoa
