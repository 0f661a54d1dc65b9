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

#include "shdoa/sh.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "shdoa/errors.hpp"

namespace shdoa {

namespace {

// Header tag naming the flat ordering and Legendre phase convention.
constexpr char kConventionTag[16] = "acn-nocs";
constexpr char kMagic[8] = {'S', 'H', 'D', 'O', 'A', 'D', 'I', 'C'};
constexpr std::uint32_t kDictVersion = 1;

double sh_norm_factor(int n, int am) {
  // sqrt((2n+1)/(4 pi) * (n-|m|)!/(n+|m|)!)
  double ratio = 1.0;
  for (int k = n - am + 1; k <= n + am; ++k) ratio /= k;
  return std::sqrt((2 * n + 1) / (4.0 * kPi) * ratio);
}

template <class T>
void append_pod(std::string& buf, const T& v) {
  buf.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(const std::string& buf, std::size_t& off) {
  if (off + sizeof(T) > buf.size())
    throw IoError("dictionary file truncated");
  T v;
  std::memcpy(&v, buf.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

}  // namespace

Complex sph_harm(OrderIndex idx, const Direction& dir) {
  if (!idx.valid()) throw std::domain_error("sph_harm: invalid (n, m)");
  const int am = std::abs(idx.m);
  const double p = assoc_legendre(idx.n, am, std::cos(dir.theta));
  const double r = sh_norm_factor(idx.n, am) * p;
  return r * std::exp(Complex(0.0, idx.m * dir.phi));
}

CVec sh_vector(int order, const Direction& dir) {
  CVec y(sh_count(order));
  for (int n = 0; n <= order; ++n)
    for (int m = -n; m <= n; ++m) y(n * n + n + m) = sph_harm({n, m}, dir);
  return y;
}

ModalDirectionalPattern mdp(const Direction& dir, int order) {
  if (order < 0) throw std::domain_error("mdp: require order >= 0");
  ModalDirectionalPattern out;
  out.order = order;
  out.coeffs = sh_vector(order, dir).conjugate();
  for (int n = 0; n <= order; ++n)
    out.coeffs.segment(n * n, 2 * n + 1) *= 4.0 * kPi * unit_imag_pow(n);
  return out;
}

MdpDictionary build_dictionary(double elev_step_deg, double azim_step_deg,
                               int order) {
  if (elev_step_deg <= 0.0 || azim_step_deg <= 0.0)
    throw ConfigError("dictionary grid steps must be positive");
  const double ne = 180.0 / elev_step_deg;
  const double na = 360.0 / azim_step_deg;
  if (std::abs(ne - std::round(ne)) > 1e-9)
    throw ConfigError("elevation step must divide 180 degrees");
  if (std::abs(na - std::round(na)) > 1e-9)
    throw ConfigError("azimuth step must divide 360 degrees");
  const int n_elev = static_cast<int>(std::round(ne));  // intervals, poles at ends
  const int n_azim = static_cast<int>(std::round(na));

  MdpDictionary dict;
  dict.order = order;
  dict.elev_step_deg = elev_step_deg;
  dict.azim_step_deg = azim_step_deg;
  dict.directions.reserve(static_cast<std::size_t>(n_elev - 1) * n_azim + 2);
  for (int i = 0; i <= n_elev; ++i) {
    const double theta_deg = i * elev_step_deg;
    if (i == 0 || i == n_elev) {
      dict.directions.push_back(Direction::from_degrees(theta_deg, 0.0));
      continue;
    }
    for (int j = 0; j < n_azim; ++j)
      dict.directions.push_back(
          Direction::from_degrees(theta_deg, j * azim_step_deg));
  }

  dict.patterns.resize(sh_count(order), dict.directions.size());
  for (std::size_t i = 0; i < dict.directions.size(); ++i)
    dict.patterns.col(i) = mdp(dict.directions[i], order).coeffs;
  return dict;
}

std::string serialize_dictionary(const MdpDictionary& dict) {
  std::string buf;
  buf.append(kMagic, sizeof(kMagic));
  append_pod(buf, kDictVersion);
  append_pod(buf, static_cast<std::uint32_t>(dict.order));
  append_pod(buf, dict.elev_step_deg);
  append_pod(buf, dict.azim_step_deg);
  buf.append(kConventionTag, sizeof(kConventionTag));
  append_pod(buf, static_cast<std::uint64_t>(dict.size()));
  for (std::size_t i = 0; i < dict.size(); ++i) {
    append_pod(buf, dict.directions[i].theta);
    append_pod(buf, dict.directions[i].phi);
    for (int p = 0; p < dict.patterns.rows(); ++p) {
      append_pod(buf, dict.patterns(p, i).real());
      append_pod(buf, dict.patterns(p, i).imag());
    }
  }
  return buf;
}

void save_dictionary(const MdpDictionary& dict, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open dictionary file for writing: " + path);
  const std::string buf = serialize_dictionary(dict);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing dictionary file: " + path);
}

MdpDictionary load_dictionary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dictionary file: " + path);
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());

  std::size_t off = 0;
  if (buf.size() < sizeof(kMagic) ||
      std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
    throw IoError("not a dictionary cache file: " + path);
  off += sizeof(kMagic);
  const auto version = read_pod<std::uint32_t>(buf, off);
  if (version != kDictVersion)
    throw ConfigError("unsupported dictionary file version");
  MdpDictionary dict;
  dict.order = static_cast<int>(read_pod<std::uint32_t>(buf, off));
  dict.elev_step_deg = read_pod<double>(buf, off);
  dict.azim_step_deg = read_pod<double>(buf, off);
  char tag[16];
  if (off + sizeof(tag) > buf.size()) throw IoError("dictionary file truncated");
  std::memcpy(tag, buf.data() + off, sizeof(tag));
  off += sizeof(tag);
  if (std::memcmp(tag, kConventionTag, sizeof(tag)) != 0)
    throw ConfigError("dictionary convention tag mismatch (expected acn-nocs)");
  const auto count = read_pod<std::uint64_t>(buf, off);

  const int c = sh_count(dict.order);
  dict.directions.resize(count);
  dict.patterns.resize(c, static_cast<Eigen::Index>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    dict.directions[i].theta = read_pod<double>(buf, off);
    dict.directions[i].phi = read_pod<double>(buf, off);
    for (int p = 0; p < c; ++p) {
      const double re = read_pod<double>(buf, off);
      const double im = read_pod<double>(buf, off);
      dict.patterns(p, static_cast<Eigen::Index>(i)) = Complex(re, im);
    }
  }
  return dict;
}

std::uint64_t dictionary_checksum(const MdpDictionary& dict) {
  const std::string buf = serialize_dictionary(dict);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : buf) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace shdoa
