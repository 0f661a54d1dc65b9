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

#include <cmath>
#include <complex>
#include <stdexcept>

#include "shdoa/types.hpp"

namespace shdoa {

/// Associated Legendre polynomial P_{n,m}(x), 0 <= m <= n, |x| <= 1,
/// WITHOUT the Condon-Shortley phase: P_{1,1}(0) = +1.
template <class Real>
Real assoc_legendre(int n, int m, Real x) {
  if (m < 0 || m > n)
    throw std::domain_error("assoc_legendre: require 0 <= m <= n");
  if (x < Real(-1) || x > Real(1))
    throw std::domain_error("assoc_legendre: require |x| <= 1");

  // P_{m,m} = (2m-1)!! (1-x^2)^{m/2}, then upward in n.
  Real pmm = Real(1);
  if (m > 0) {
    const Real s = std::sqrt((Real(1) - x) * (Real(1) + x));
    Real f = Real(1);
    for (int k = 1; k <= m; ++k) {
      pmm *= f * s;
      f += Real(2);
    }
  }
  if (n == m) return pmm;

  Real pnm = x * Real(2 * m + 1) * pmm;  // P_{m+1,m}
  for (int nn = m + 2; nn <= n; ++nn) {
    const Real next =
        (Real(2 * nn - 1) * x * pnm - Real(nn + m - 1) * pmm) / Real(nn - m);
    pmm = pnm;
    pnm = next;
  }
  return pnm;
}

namespace detail {

template <class Real>
Real sph_j0(Real x) {
  if (std::abs(x) < Real(1e-6)) return Real(1) - x * x / Real(6);
  return std::sin(x) / x;
}

template <class Real>
Real sph_j1(Real x) {
  if (std::abs(x) < Real(1e-6)) return x / Real(3);
  return (std::sin(x) / x - std::cos(x)) / x;
}

}  // namespace detail

/// Spherical Bessel function of the first kind j_n(x), x >= 0.
/// Upward recurrence when x > n (stable there), Miller's downward
/// recurrence with renormalization otherwise.
template <class Real>
Real sph_bessel_j(int n, Real x) {
  if (n < 0) throw std::domain_error("sph_bessel_j: require n >= 0");
  if (x < Real(0)) throw std::domain_error("sph_bessel_j: require x >= 0");
  if (x == Real(0)) return n == 0 ? Real(1) : Real(0);
  if (n == 0) return detail::sph_j0(x);
  if (n == 1) return detail::sph_j1(x);

  const Real inv_x = Real(1) / x;
  if (x > Real(0.5) + Real(n)) {
    Real jm = detail::sph_j0(x);
    Real j = detail::sph_j1(x);
    for (int k = 1; k < n; ++k) {
      const Real jp = Real(2 * k + 1) * inv_x * j - jm;
      jm = j;
      j = jp;
    }
    return j;
  }

  // Downward from a start order comfortably above n; normalize with j_0.
  int start = n + static_cast<int>(std::ceil(std::sqrt(Real(40) * Real(n))));
  start += start & 1;
  constexpr Real kBig = Real(1e10);
  constexpr Real kBigInv = Real(1e-10);
  Real jp = Real(0);
  Real j = Real(1);
  Real result = Real(0);
  for (int k = start; k > 0; --k) {
    const Real jm = Real(2 * k + 1) * inv_x * j - jp;
    jp = j;
    j = jm;
    if (std::abs(j) > kBig) {
      j *= kBigInv;
      jp *= kBigInv;
      result *= kBigInv;
    }
    if (k == n) result = jp;
  }
  return result * detail::sph_j0(x) / j;
}

/// Spherical Bessel function of the second kind y_n(x), x > 0.
/// Upward recurrence, stable for all n.
template <class Real>
Real sph_bessel_y(int n, Real x) {
  if (n < 0) throw std::domain_error("sph_bessel_y: require n >= 0");
  if (x <= Real(0)) throw std::domain_error("sph_bessel_y: require x > 0");
  Real ym = -std::cos(x) / x;  // y_0
  if (n == 0) return ym;
  Real y = (ym - std::sin(x)) / x;  // y_1
  for (int k = 1; k < n; ++k) {
    const Real yp = Real(2 * k + 1) / x * y - ym;
    ym = y;
    y = yp;
  }
  return y;
}

/// Spherical Hankel function of the first kind h_n(x) = j_n(x) + i y_n(x).
template <class Real>
std::complex<Real> sph_hankel_h1(int n, Real x) {
  if (x <= Real(0))
    throw std::domain_error("sph_hankel_h1: singular at x <= 0");
  return {sph_bessel_j(n, x), sph_bessel_y(n, x)};
}

/// Derivatives via f_n'(x) = f_{n-1}(x) - (n+1)/x f_n(x); f_0' = -f_1.
template <class Real>
Real sph_bessel_j_deriv(int n, Real x) {
  if (n == 0) return -sph_bessel_j(1, x);
  return sph_bessel_j(n - 1, x) - Real(n + 1) / x * sph_bessel_j(n, x);
}

template <class Real>
std::complex<Real> sph_hankel_h1_deriv(int n, Real x) {
  if (n == 0) return -sph_hankel_h1(1, x);
  return sph_hankel_h1(n - 1, x) -
         std::complex<Real>(Real(n + 1) / x) * sph_hankel_h1(n, x);
}

/// Mode strength b_n of a spherical array of normalized radius xi = kR:
/// j_n(xi) for an open sphere, j_n(xi) - j_n'(xi)/h_n'(xi) h_n(xi) for a
/// rigid one.
template <class Real>
std::complex<Real> mode_strength(int n, Real xi, SphereKind kind) {
  if (kind == SphereKind::Open) {
    if (xi < Real(0)) throw std::domain_error("mode_strength: xi >= 0");
    return sph_bessel_j(n, xi);
  }
  if (xi <= Real(0))
    throw std::domain_error("mode_strength: rigid sphere singular at xi = 0");
  const Real jd = sph_bessel_j_deriv(n, xi);
  const std::complex<Real> hd = sph_hankel_h1_deriv(n, xi);
  return sph_bessel_j(n, xi) - jd / hd * sph_hankel_h1(n, xi);
}

/// Mode strengths for all orders 0..order at once. xi = 0 is evaluated as
/// the limit b_n -> delta_{n0} (valid for both sphere kinds), so that DC
/// bins of a rendering grid do not trip the rigid-sphere singularity.
inline CVec mode_strength_all(int order, double xi, SphereKind kind) {
  CVec b(order + 1);
  if (xi == 0.0) {
    b.setZero();
    b(0) = 1.0;
    return b;
  }
  for (int n = 0; n <= order; ++n) b(n) = mode_strength(n, xi, kind);
  return b;
}

}  // namespace shdoa
