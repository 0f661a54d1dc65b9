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

#include "shdoa/encode.hpp"

#include <cmath>

#include "shdoa/errors.hpp"
#include "shdoa/sh.hpp"
#include "shdoa/special.hpp"

namespace shdoa {

namespace {

struct FrameRange {
  int begin = 0;
  int end = 0;
  int count() const { return end - begin; }
};

FrameRange resolve_frames(const Spectrogram& band, int frame_begin,
                          int frame_end) {
  if (frame_end < 0) frame_end = band.frame_count();
  if (frame_begin < 0 || frame_begin >= frame_end ||
      frame_end > band.frame_count())
    throw ConfigError("encode: invalid frame range");
  return {frame_begin, frame_end};
}

void check_band(const Spectrogram& band, const ArrayGeometry& geom) {
  if (band.bins() == 0 || band.frames.empty())
    throw ConfigError("encode: empty spectrogram");
  if (band.channels() != geom.count())
    throw ConfigError("encode: channel count does not match geometry");
  if (geom.kind == SphereKind::Rigid && band.bin_freqs_hz(0) <= 0.0)
    throw ConfigError("encode: rigid array cannot encode the DC bin; "
                      "select a band with f_lo > 0");
}

/// Per-column radial equalization gains 1/b_n(kR) expanded to the C flat
/// channels, magnitude-clamped at max_eq_gain_db with phase preserved.
CMat equalization_gains(const Spectrogram& band, const ArrayGeometry& geom,
                        int order, double speed_of_sound,
                        double max_eq_gain_db) {
  const int c = sh_count(order);
  const double gain_cap = std::isinf(max_eq_gain_db)
                              ? kNoEqGainLimit
                              : std::pow(10.0, max_eq_gain_db / 20.0);
  CMat gains(c, band.bins());
  for (int f = 0; f < band.bins(); ++f) {
    const double k = 2.0 * kPi * band.bin_freqs_hz(f) / speed_of_sound;
    const CVec b = mode_strength_all(order, k * geom.radius_m, geom.kind);
    for (int n = 0; n <= order; ++n) {
      Complex g = 1.0 / b(n);
      const double mag = std::abs(g);
      if (mag > gain_cap) g *= gain_cap / mag;
      gains.block(n * n, f, 2 * n + 1, 1).setConstant(g);
    }
  }
  return gains;
}

RVec column_wavenumbers(const Spectrogram& band, int n_frames,
                        double speed_of_sound) {
  RVec k(static_cast<Eigen::Index>(band.bins()) * n_frames);
  for (int t = 0; t < n_frames; ++t)
    for (int f = 0; f < band.bins(); ++f)
      k(static_cast<Eigen::Index>(t) * band.bins() + f) =
          2.0 * kPi * band.bin_freqs_hz(f) / speed_of_sound;
  return k;
}

CoefficientMatrix assemble(const Spectrogram& band, const ArrayGeometry& geom,
                           int order, double speed_of_sound,
                           double max_eq_gain_db, FrameRange range,
                           const CMat& spatial /* C x Q */) {
  const int c = sh_count(order);
  const CMat gains =
      equalization_gains(band, geom, order, speed_of_sound, max_eq_gain_db);

  CoefficientMatrix out;
  out.order = order;
  out.entries.resize(c, static_cast<Eigen::Index>(band.bins()) * range.count());
  for (int t = range.begin; t < range.end; ++t) {
    const Eigen::Index col0 =
        static_cast<Eigen::Index>(t - range.begin) * band.bins();
    out.entries.middleCols(col0, band.bins()).noalias() =
        spatial * band.frames[static_cast<std::size_t>(t)];
    out.entries.middleCols(col0, band.bins()).array() *= gains.array();
  }
  out.wavenumbers = column_wavenumbers(band, range.count(), speed_of_sound);
  out.block_time_s = band.frame_time_s(range.begin);
  return out;
}

}  // namespace

CoefficientMatrix encode_block(const Spectrogram& band,
                               const ArrayGeometry& geom, int order,
                               double speed_of_sound, double max_eq_gain_db,
                               int frame_begin, int frame_end) {
  check_band(band, geom);
  geom.validate(order);
  const FrameRange range = resolve_frames(band, frame_begin, frame_end);
  const CMat spatial =
      sh_matrix(geom, order).adjoint() * geom.weights.asDiagonal();
  return assemble(band, geom, order, speed_of_sound, max_eq_gain_db, range,
                  spatial);
}

CoefficientMatrix encode_pinv(const Spectrogram& band,
                              const ArrayGeometry& geom, int order,
                              double speed_of_sound, double max_eq_gain_db,
                              int frame_begin, int frame_end) {
  check_band(band, geom);
  const int c = sh_count(order);
  if (geom.count() < c)
    throw ConfigError("encode_pinv: require Q >= (N+1)^2 capsules");
  const FrameRange range = resolve_frames(band, frame_begin, frame_end);

  const CMat y = sh_matrix(geom, order);
  Eigen::ColPivHouseholderQR<CMat> qr(y);
  qr.setThreshold(1e-10);
  if (qr.rank() < c)
    throw NumericError("encode_pinv: capsule SH matrix is rank deficient");
  // Min-norm least squares through the QR factors; build the C x Q
  // pseudoinverse once, it is frequency-independent.
  const CMat pinv = qr.solve(CMat::Identity(geom.count(), geom.count()));
  return assemble(band, geom, order, speed_of_sound, max_eq_gain_db, range,
                  pinv);
}

int frames_per_block(double block_s, double sample_rate, int hop) {
  if (block_s <= 0.0) throw ConfigError("block duration must be > 0");
  return std::max(1, static_cast<int>(block_s * sample_rate / hop));
}

std::vector<CoefficientMatrix> encode_blocks(
    const Spectrogram& band, const ArrayGeometry& geom, int order,
    double block_s, double speed_of_sound, double max_eq_gain_db) {
  const int fpb = frames_per_block(block_s, band.sample_rate, band.hop);
  const int n_blocks = band.frame_count() / fpb;
  if (n_blocks == 0)
    throw ConfigError("encode_blocks: signal shorter than one block");

  std::vector<CoefficientMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(n_blocks));
  for (int b = 0; b < n_blocks; ++b) {
    CoefficientMatrix m =
        encode_block(band, geom, order, speed_of_sound, max_eq_gain_db,
                     b * fpb, (b + 1) * fpb);
    m.block_index = b;
    blocks.push_back(std::move(m));
  }
  return blocks;
}

}  // namespace shdoa
