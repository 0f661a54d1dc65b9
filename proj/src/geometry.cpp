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

#include "shdoa/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "shdoa/errors.hpp"
#include "shdoa/sh.hpp"

namespace shdoa {

void ArrayGeometry::validate(int order) const {
  if (count() == 0) throw ConfigError("geometry: no capsules");
  if (radius_m <= 0.0) throw ConfigError("geometry: radius must be > 0");
  if (weights.size() != count())
    throw ConfigError("geometry: one weight per capsule required");
  if ((weights.array() <= 0.0).any())
    throw ConfigError("geometry: weights must be positive");
  if (count() < sh_count(order))
    throw ConfigError("geometry: underdetermined, need Q >= (N+1)^2 capsules");
  if (std::abs(weights.sum() - 4.0 * kPi) > 1e-6)
    throw ConfigError("geometry: quadrature weights must sum to 4*pi");
}

ArrayGeometry builtin_array32(double radius_m, SphereKind kind) {
  ArrayGeometry geom;
  geom.radius_m = radius_m;
  geom.kind = kind;
  geom.capsule_dirs.reserve(32);
  geom.weights.resize(32);

  const double g = (1.0 + std::sqrt(5.0)) / 2.0;  // golden ratio
  int idx = 0;
  auto push = [&](double x, double y, double z, double w) {
    geom.capsule_dirs.push_back(Direction::from_unit_vector(Vec3(x, y, z)));
    geom.weights(idx++) = w;
  };

  // Icosahedron vertices: cyclic permutations of (0, +-1, +-g).
  const double wi = 4.0 * kPi * 25.0 / 840.0;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      push(0.0, s1, s2 * g, wi);
      push(s1, s2 * g, 0.0, wi);
      push(s2 * g, 0.0, s1, wi);
    }

  // Dodecahedron vertices: (+-1,+-1,+-1) plus cyclic permutations of
  // (0, +-1/g, +-g).
  const double wd = 4.0 * kPi * 27.0 / 840.0;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) push(s1, s2, s3, wd);
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      push(0.0, s1 / g, s2 * g, wd);
      push(s1 / g, s2 * g, 0.0, wd);
      push(s2 * g, 0.0, s1 / g, wd);
    }
  return geom;
}

ArrayGeometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geometry file: " + path);

  ArrayGeometry geom;
  bool have_radius = false, have_kind = false;
  std::vector<double> weights;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "radius_m") {
      if (!(ls >> geom.radius_m))
        throw IoError("geometry: bad radius_m at line " + std::to_string(lineno));
      have_radius = true;
    } else if (first == "kind") {
      std::string k;
      ls >> k;
      if (k == "open")
        geom.kind = SphereKind::Open;
      else if (k == "rigid")
        geom.kind = SphereKind::Rigid;
      else
        throw IoError("geometry: kind must be open|rigid at line " +
                      std::to_string(lineno));
      have_kind = true;
    } else {
      double theta_deg = 0.0, phi_deg = 0.0, w = 0.0;
      std::istringstream row(line);
      if (!(row >> theta_deg >> phi_deg >> w))
        throw IoError("geometry: expected `theta_deg phi_deg weight` at line " +
                      std::to_string(lineno));
      geom.capsule_dirs.push_back(Direction::from_degrees(theta_deg, phi_deg));
      weights.push_back(w);
    }
  }
  if (!have_radius) throw IoError("geometry: missing radius_m header");
  if (!have_kind) throw IoError("geometry: missing kind header");
  if (weights.empty()) throw IoError("geometry: no capsule rows");
  geom.weights =
      Eigen::Map<const RVec>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  return geom;
}

void save_geometry(const ArrayGeometry& geom, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open geometry file for writing: " + path);
  out << "# spherical array geometry: theta_deg phi_deg weight rows\n";
  out << "radius_m " << geom.radius_m << "\n";
  out << "kind " << (geom.kind == SphereKind::Rigid ? "rigid" : "open") << "\n";
  out.precision(17);
  for (int q = 0; q < geom.count(); ++q)
    out << rad2deg(geom.capsule_dirs[q].theta) << " "
        << rad2deg(geom.capsule_dirs[q].phi) << " " << geom.weights(q) << "\n";
  if (!out) throw IoError("failed writing geometry file: " + path);
}

CMat sh_matrix(const ArrayGeometry& geom, int order) {
  CMat y(geom.count(), sh_count(order));
  for (int q = 0; q < geom.count(); ++q)
    y.row(q) = sh_vector(order, geom.capsule_dirs[q]).transpose();
  return y;
}

}  // namespace shdoa
