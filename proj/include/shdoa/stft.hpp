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

#include <vector>

#include "shdoa/types.hpp"

namespace shdoa {

/// Q-channel time-domain signal, one row per channel.
struct MultichannelSignal {
  RMat samples;  // Q x T
  double sample_rate = 0.0;

  int channels() const { return static_cast<int>(samples.rows()); }
  Eigen::Index length() const { return samples.cols(); }
  double duration_s() const { return length() / sample_rate; }
};

/// One-sided multichannel spectrogram; frames[t] holds the Q x F bins of
/// analysis frame t.
struct Spectrogram {
  std::vector<CMat> frames;
  RVec bin_freqs_hz;
  double sample_rate = 0.0;
  int hop = 0;
  int window_size = 0;
  int fft_size = 0;

  int channels() const {
    return frames.empty() ? 0 : static_cast<int>(frames[0].rows());
  }
  int bins() const { return static_cast<int>(bin_freqs_hz.size()); }
  int frame_count() const { return static_cast<int>(frames.size()); }
  double frame_time_s(int t) const { return t * hop / sample_rate; }
};

/// Periodic (DFT-even) Hamming window.
RVec hamming_window(int size);

/// Analysis STFT: Hamming-windowed frames left-aligned at sample 0,
/// hop = window_size*(1-overlap), one-sided spectra.
Spectrogram stft_forward(const MultichannelSignal& sig, int window_size,
                         double overlap, int fft_size);

/// Keeps bins with f_lo <= freq <= f_hi, preserving order.
Spectrogram select_band(const Spectrogram& spec, double f_lo_hz,
                        double f_hi_hz);

/// One-sided real FFT helpers shared with the room renderer.
CVec rfft(const RVec& x, int fft_size);
RVec irfft(const CVec& spectrum, int fft_size);

}  // namespace shdoa
