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

#include <string>
#include <vector>

#include "shdoa/types.hpp"

namespace shdoa {

/// Spherical microphone array: capsule directions on a sphere of radius R,
/// open or rigid baffle, and quadrature weights for orthonormal encoding.
struct ArrayGeometry {
  std::vector<Direction> capsule_dirs;
  double radius_m = 0.0;
  SphereKind kind = SphereKind::Rigid;
  RVec weights;

  int count() const { return static_cast<int>(capsule_dirs.size()); }

  /// Checks Q >= (order+1)^2 and weight-sum validity for quadrature use.
  void validate(int order) const;
};

/// Bundled near-uniform 32-capsule rigid-sphere layout: icosahedron plus
/// dodecahedron vertices with degree-9 quadrature weights (discrete SH
/// orthonormality is exact through order 4).
ArrayGeometry builtin_array32(double radius_m = 0.042,
                              SphereKind kind = SphereKind::Rigid);

/// Plain-text geometry file: `radius_m`/`kind` headers followed by one
/// `theta_deg phi_deg weight` row per capsule.
ArrayGeometry load_geometry(const std::string& path);
void save_geometry(const ArrayGeometry& geom, const std::string& path);

/// Q x C matrix of Y_nm(capsule_q) values, flat ACN columns.
CMat sh_matrix(const ArrayGeometry& geom, int order);

}  // namespace shdoa
