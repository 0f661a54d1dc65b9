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

#include <limits>
#include <vector>

#include "shdoa/geometry.hpp"
#include "shdoa/stft.hpp"
#include "shdoa/types.hpp"

namespace shdoa {

/// SH coefficient matrix of one evaluation block: C rows (flat ACN index),
/// one column per retained (bin, frame) pair, all frames of the block
/// concatenated along the column axis.
struct CoefficientMatrix {
  CMat entries;       // C x F
  int order = 0;
  RVec wavenumbers;   // per column, k = 2*pi*f/c
  int block_index = 0;
  double block_time_s = 0.0;

  int channels() const { return static_cast<int>(entries.rows()); }
  Eigen::Index columns() const { return entries.cols(); }
};

inline constexpr double kNoEqGainLimit = std::numeric_limits<double>::infinity();

/// Quadrature encoding of the frames [frame_begin, frame_end) of a
/// band-limited spectrogram: alpha_nm(k) = 1/b_n(kR) sum_q w_q P_q(k)
/// Y*_nm(capsule_q). The radial equalization magnitude |1/b_n| is clamped
/// at max_eq_gain_db (phase preserved); pass kNoEqGainLimit to disable.
CoefficientMatrix encode_block(const Spectrogram& band,
                               const ArrayGeometry& geom, int order,
                               double speed_of_sound = kSpeedOfSound,
                               double max_eq_gain_db = 40.0,
                               int frame_begin = 0, int frame_end = -1);

/// Least-squares alternative for layouts without reliable quadrature
/// weights: per-bin spatial fit followed by the same clamped radial
/// equalization. Requires Q >= C and a full-rank capsule SH matrix.
CoefficientMatrix encode_pinv(const Spectrogram& band,
                              const ArrayGeometry& geom, int order,
                              double speed_of_sound = kSpeedOfSound,
                              double max_eq_gain_db = 40.0,
                              int frame_begin = 0, int frame_end = -1);

/// Groups consecutive STFT frames into blocks of block_s seconds
/// (floor(block_s*fs/hop) frames each; a trailing partial block is
/// dropped) and encodes each.
std::vector<CoefficientMatrix> encode_blocks(
    const Spectrogram& band, const ArrayGeometry& geom, int order,
    double block_s, double speed_of_sound = kSpeedOfSound,
    double max_eq_gain_db = 40.0);

/// Frames per evaluation block for the given STFT hop.
int frames_per_block(double block_s, double sample_rate, int hop);

}  // namespace shdoa
