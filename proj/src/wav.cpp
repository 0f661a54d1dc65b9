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

#include "shdoa/wav.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "shdoa/errors.hpp"

namespace shdoa {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <class T>
T read_le(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

template <class T>
void write_le(std::string& buf, T v) {
  buf.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

}  // namespace

MultichannelSignal read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (data.size() < 12 || data.compare(0, 4, "RIFF") != 0 ||
      data.compare(8, 4, "WAVE") != 0)
    throw IoError("not a RIFF/WAVE file: " + path);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const char* payload = nullptr;
  std::uint32_t payload_size = 0;

  std::size_t off = 12;
  while (off + 8 <= data.size()) {
    const std::string id = data.substr(off, 4);
    const auto size = read_le<std::uint32_t>(data.data() + off + 4);
    off += 8;
    if (off + size > data.size())
      throw IoError("truncated WAV chunk in " + path);
    if (id == "fmt ") {
      if (size < 16) throw IoError("malformed fmt chunk in " + path);
      format = read_le<std::uint16_t>(data.data() + off);
      channels = read_le<std::uint16_t>(data.data() + off + 2);
      sample_rate = read_le<std::uint32_t>(data.data() + off + 4);
      bits = read_le<std::uint16_t>(data.data() + off + 14);
      if (format == kFormatExtensible && size >= 40)
        format = read_le<std::uint16_t>(data.data() + off + 24);
    } else if (id == "data") {
      payload = data.data() + off;
      payload_size = size;
    }
    off += size + (size & 1);  // chunks are word-aligned
  }
  if (channels == 0 || sample_rate == 0)
    throw IoError("missing fmt chunk in " + path);
  if (payload == nullptr) throw IoError("missing data chunk in " + path);

  const int bytes_per_sample = bits / 8;
  if (!((format == kFormatPcm && (bits == 16 || bits == 24)) ||
        (format == kFormatFloat && bits == 32)))
    throw IoError("unsupported WAV encoding (want PCM16/PCM24/float32): " +
                  path);

  const std::uint32_t frame_bytes = channels * bytes_per_sample;
  const std::uint32_t n_frames = payload_size / frame_bytes;
  MultichannelSignal sig;
  sig.sample_rate = sample_rate;
  sig.samples.resize(channels, n_frames);
  for (std::uint32_t t = 0; t < n_frames; ++t) {
    const char* p = payload + static_cast<std::size_t>(t) * frame_bytes;
    for (int ch = 0; ch < channels; ++ch, p += bytes_per_sample) {
      double v = 0.0;
      if (format == kFormatFloat) {
        v = read_le<float>(p);
      } else if (bits == 16) {
        v = read_le<std::int16_t>(p) / 32768.0;
      } else {  // 24-bit little-endian signed
        std::int32_t s = (static_cast<std::uint8_t>(p[0])) |
                         (static_cast<std::uint8_t>(p[1]) << 8) |
                         (static_cast<std::int32_t>(static_cast<std::int8_t>(p[2])) << 16);
        v = s / 8388608.0;
      }
      sig.samples(ch, t) = v;
    }
  }
  return sig;
}

void write_wav(const std::string& path, const MultichannelSignal& sig,
               WavFormat format) {
  if (sig.sample_rate <= 0.0 || sig.channels() == 0)
    throw ConfigError("write_wav: empty signal");

  const int channels = sig.channels();
  const auto n_frames = sig.length();
  const int bytes_per_sample = format == WavFormat::Pcm16   ? 2
                               : format == WavFormat::Pcm24 ? 3
                                                            : 4;
  const std::uint16_t fmt_tag =
      format == WavFormat::Float32 ? kFormatFloat : kFormatPcm;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(n_frames) * channels * bytes_per_sample;

  std::string buf;
  buf.reserve(data_size + 64);
  buf.append("RIFF");
  const bool with_fact = fmt_tag == kFormatFloat;
  write_le<std::uint32_t>(buf, 4 + 24 + (with_fact ? 12 : 0) + 8 + data_size);
  buf.append("WAVE");
  buf.append("fmt ");
  write_le<std::uint32_t>(buf, 16);
  write_le<std::uint16_t>(buf, fmt_tag);
  write_le<std::uint16_t>(buf, static_cast<std::uint16_t>(channels));
  write_le<std::uint32_t>(buf, static_cast<std::uint32_t>(sig.sample_rate));
  write_le<std::uint32_t>(buf, static_cast<std::uint32_t>(sig.sample_rate) *
                                   channels * bytes_per_sample);
  write_le<std::uint16_t>(buf,
                          static_cast<std::uint16_t>(channels * bytes_per_sample));
  write_le<std::uint16_t>(buf, static_cast<std::uint16_t>(bytes_per_sample * 8));
  if (with_fact) {
    buf.append("fact");
    write_le<std::uint32_t>(buf, 4);
    write_le<std::uint32_t>(buf, static_cast<std::uint32_t>(n_frames));
  }
  buf.append("data");
  write_le<std::uint32_t>(buf, data_size);

  for (Eigen::Index t = 0; t < n_frames; ++t) {
    for (int ch = 0; ch < channels; ++ch) {
      const double v = sig.samples(ch, t);
      if (format == WavFormat::Float32) {
        write_le<float>(buf, static_cast<float>(v));
      } else if (format == WavFormat::Pcm16) {
        const double c = std::clamp(v, -1.0, 1.0 - 1.0 / 32768.0);
        write_le<std::int16_t>(buf,
                               static_cast<std::int16_t>(std::lround(c * 32768.0)));
      } else {
        const double c = std::clamp(v, -1.0, 1.0 - 1.0 / 8388608.0);
        const auto s = static_cast<std::int32_t>(std::lround(c * 8388608.0));
        buf.push_back(static_cast<char>(s & 0xFF));
        buf.push_back(static_cast<char>((s >> 8) & 0xFF));
        buf.push_back(static_cast<char>((s >> 16) & 0xFF));
      }
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open WAV file for writing: " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing WAV file: " + path);
}

}  // namespace shdoa
