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

#include "shdoa/special.hpp"
#include "shdoa/types.hpp"

namespace shdoa {

/// Complex spherical harmonic Y_nm(theta, phi) with the |m| Legendre form
/// and no Condon-Shortley phase, so Y_{n,-m} = conj(Y_{n,m}) exactly.
Complex sph_harm(OrderIndex idx, const Direction& dir);

/// All Y_nm up to `order`, flat ACN ordering. Length (order+1)^2.
CVec sh_vector(int order, const Direction& dir);

/// i^n for n >= 0.
inline Complex unit_imag_pow(int n) {
  static constexpr Complex cycle[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return cycle[n & 3];
}

/// Far-field modal directional pattern: coeffs[p(n,m)] = 4*pi i^n Y*_nm(dir).
/// Its norm is direction-independent: sqrt(4*pi) * (order+1).
struct ModalDirectionalPattern {
  CVec coeffs;
  int order = 0;

  double norm() const { return coeffs.norm(); }
};

ModalDirectionalPattern mdp(const Direction& dir, int order);

/// Direction-independent MDP norm, sqrt(4*pi)*(N+1).
inline double mdp_norm(int order) {
  return std::sqrt(4.0 * kPi) * (order + 1);
}

/// Grid of precomputed MDPs used for pattern matching. Patterns are stored
/// as columns of a C x size matrix; poles appear once each.
struct MdpDictionary {
  int order = 0;
  double elev_step_deg = 0.0;
  double azim_step_deg = 0.0;
  std::vector<Direction> directions;
  CMat patterns;

  std::size_t size() const { return directions.size(); }
};

MdpDictionary build_dictionary(double elev_step_deg, double azim_step_deg,
                               int order);

/// Serialized dictionary cache. The header carries the coefficient
/// convention tag; loading a file produced under a different convention
/// fails instead of silently mismatching the encoder.
std::string serialize_dictionary(const MdpDictionary& dict);
void save_dictionary(const MdpDictionary& dict, const std::string& path);
MdpDictionary load_dictionary(const std::string& path);

/// FNV-1a over the serialized bytes; stable across rebuilds.
std::uint64_t dictionary_checksum(const MdpDictionary& dict);

}  // namespace shdoa
