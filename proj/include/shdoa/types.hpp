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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace shdoa {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfSound = 343.0;  // m/s

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using CMat = Mat<Complex>;
using CVec = Vec<Complex>;
using RMat = Mat<double>;
using RVec = Vec<double>;
using Vec3 = Eigen::Vector3d;

enum class SphereKind { Open, Rigid };

/// Number of spherical-harmonic channels up to and including `order`.
inline constexpr int sh_count(int order) { return (order + 1) * (order + 1); }

/// (order n, degree m) pair with the flat ACN-style index p = n^2 + n + m.
struct OrderIndex {
  int n = 0;
  int m = 0;

  int flat() const { return n * n + n + m; }
  bool valid() const { return n >= 0 && m >= -n && m <= n; }

  static OrderIndex from_flat(int p) {
    const int n = static_cast<int>(std::sqrt(static_cast<double>(p)));
    return {n, p - n * n - n};
  }
};

/// Unit direction on the sphere: theta is the elevation angle measured from
/// the +z axis in [0, pi], phi the azimuth in [0, 2*pi).
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  Vec3 unit_vector() const {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
  }

  static Direction from_unit_vector(const Vec3& v) {
    const double r = v.norm();
    if (r == 0.0) throw std::domain_error("Direction: zero vector");
    double theta = std::acos(std::clamp(v.z() / r, -1.0, 1.0));
    double phi = std::atan2(v.y(), v.x());
    if (phi < 0.0) phi += 2.0 * kPi;
    return {theta, phi};
  }

  static Direction from_degrees(double theta_deg, double phi_deg) {
    return {theta_deg * kPi / 180.0, phi_deg * kPi / 180.0};
  }
};

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace shdoa
