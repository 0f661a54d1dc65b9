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

#include "shdoa/stft.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

#include "shdoa/errors.hpp"

namespace shdoa {

RVec hamming_window(int size) {
  RVec w(size);
  for (int t = 0; t < size; ++t)
    w(t) = 0.54 - 0.46 * std::cos(2.0 * kPi * t / size);
  return w;
}

CVec rfft(const RVec& x, int fft_size) {
  if (fft_size % 2 != 0) throw ConfigError("fft size must be even");
  std::vector<double> in(static_cast<std::size_t>(fft_size), 0.0);
  const auto n = std::min<Eigen::Index>(x.size(), fft_size);
  for (Eigen::Index i = 0; i < n; ++i) in[static_cast<std::size_t>(i)] = x(i);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<Complex> out;
  fft.fwd(out, in);
  return Eigen::Map<const CVec>(out.data(), static_cast<Eigen::Index>(out.size()));
}

RVec irfft(const CVec& spectrum, int fft_size) {
  if (spectrum.size() != fft_size / 2 + 1)
    throw ConfigError("irfft: spectrum length must be fft_size/2 + 1");
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<Complex> in(spectrum.data(), spectrum.data() + spectrum.size());
  std::vector<double> out;
  fft.inv(out, in, fft_size);
  return Eigen::Map<const RVec>(out.data(), static_cast<Eigen::Index>(out.size()));
}

Spectrogram stft_forward(const MultichannelSignal& sig, int window_size,
                         double overlap, int fft_size) {
  if (sig.sample_rate <= 0.0) throw ConfigError("stft: sample rate must be > 0");
  if (window_size <= 0 || fft_size <= 0 || window_size > fft_size)
    throw ConfigError("stft: require 0 < window_size <= fft_size");
  if (overlap < 0.0 || overlap >= 1.0)
    throw ConfigError("stft: require 0 <= overlap < 1");
  if (sig.length() < window_size)
    throw ConfigError("stft: signal shorter than one analysis window");

  Spectrogram spec;
  spec.sample_rate = sig.sample_rate;
  spec.window_size = window_size;
  spec.fft_size = fft_size;
  spec.hop = std::max(1, static_cast<int>(std::lround(window_size * (1.0 - overlap))));

  const int q = sig.channels();
  const int n_frames =
      static_cast<int>((sig.length() - window_size) / spec.hop) + 1;
  const int n_bins = fft_size / 2 + 1;

  spec.bin_freqs_hz.resize(n_bins);
  for (int f = 0; f < n_bins; ++f)
    spec.bin_freqs_hz(f) = f * sig.sample_rate / fft_size;

  const RVec window = hamming_window(window_size);
  spec.frames.assign(static_cast<std::size_t>(n_frames), CMat(q, n_bins));

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> buf(static_cast<std::size_t>(fft_size), 0.0);
  std::vector<Complex> out;
  for (int t = 0; t < n_frames; ++t) {
    const Eigen::Index start = static_cast<Eigen::Index>(t) * spec.hop;
    for (int ch = 0; ch < q; ++ch) {
      for (int i = 0; i < window_size; ++i)
        buf[static_cast<std::size_t>(i)] = sig.samples(ch, start + i) * window(i);
      std::fill(buf.begin() + window_size, buf.end(), 0.0);
      fft.fwd(out, buf);
      spec.frames[static_cast<std::size_t>(t)].row(ch) =
          Eigen::Map<const CVec>(out.data(), n_bins).transpose();
    }
  }
  return spec;
}

Spectrogram select_band(const Spectrogram& spec, double f_lo_hz,
                        double f_hi_hz) {
  if (!(f_lo_hz < f_hi_hz))
    throw ConfigError("select_band: require f_lo < f_hi");
  if (f_hi_hz > spec.sample_rate / 2.0 + 1e-9)
    throw ConfigError("select_band: f_hi beyond Nyquist");

  std::vector<int> keep;
  for (int f = 0; f < spec.bins(); ++f)
    if (spec.bin_freqs_hz(f) >= f_lo_hz && spec.bin_freqs_hz(f) <= f_hi_hz)
      keep.push_back(f);
  if (keep.empty()) throw ConfigError("select_band: empty frequency band");

  Spectrogram out;
  out.sample_rate = spec.sample_rate;
  out.hop = spec.hop;
  out.window_size = spec.window_size;
  out.fft_size = spec.fft_size;
  out.bin_freqs_hz.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    out.bin_freqs_hz(static_cast<Eigen::Index>(i)) = spec.bin_freqs_hz(keep[i]);
  out.frames.reserve(spec.frames.size());
  for (const CMat& frame : spec.frames) {
    CMat sub(frame.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
      sub.col(static_cast<Eigen::Index>(i)) = frame.col(keep[i]);
    out.frames.push_back(std::move(sub));
  }
  return out;
}

}  // namespace shdoa
