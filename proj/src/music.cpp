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

#include "shdoa/music.hpp"

#include <atomic>

#include "shdoa/errors.hpp"

namespace shdoa {

namespace {

std::atomic<long> g_eig_calls{0};

struct ScmDecomposition {
  Pseudospectrum spectrum;
  RVec eigenvalues;
};

// One eigendecomposition per block; pseudospectrum and eigenvalue spread
// both come out of it.
ScmDecomposition decompose(const CoefficientMatrix& coeffs,
                           const MdpDictionary& dict, int n_sources) {
  const int c = coeffs.channels();
  if (dict.order != coeffs.order)
    throw ConfigError("shd_music: dictionary order mismatch");
  if (n_sources < 1 || n_sources >= c)
    throw ConfigError("shd_music: require 1 <= n_sources < (N+1)^2");
  const Eigen::Index f = coeffs.columns();
  if (f == 0) throw NumericError("shd_music: empty coefficient matrix");

  ScmDecomposition out;
  out.spectrum.block_index = coeffs.block_index;
  out.spectrum.scm_rank_deficient = f < c;

  CMat scm = coeffs.entries * coeffs.entries.adjoint() / static_cast<double>(f);
  scm += (1e-6 * scm.trace().real() / c) * CMat::Identity(c, c);

  g_eig_calls.fetch_add(1);
  Eigen::SelfAdjointEigenSolver<CMat> eig(scm);
  if (eig.info() != Eigen::Success)
    throw NumericError("shd_music: eigendecomposition failed in block " +
                       std::to_string(coeffs.block_index));
  out.eigenvalues = eig.eigenvalues();

  // Eigenvalues ascend; the first C - n_sources vectors span the noise
  // subspace.
  const CMat noise = eig.eigenvectors().leftCols(c - n_sources);
  const RVec proj =
      (noise.adjoint() * dict.patterns).colwise().squaredNorm().transpose();
  out.spectrum.values = (proj.array() + 1e-300).inverse().matrix();
  return out;
}

}  // namespace

long eig_call_count() { return g_eig_calls.load(); }
void reset_eig_call_count() { g_eig_calls.store(0); }

Pseudospectrum music_pseudospectrum(const CoefficientMatrix& coeffs,
                                    const MdpDictionary& dict, int n_sources) {
  return decompose(coeffs, dict, n_sources).spectrum;
}

DoaEstimate shd_music(const CoefficientMatrix& coeffs,
                      const MdpDictionary& dict, int n_sources) {
  const ScmDecomposition d = decompose(coeffs, dict, n_sources);

  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < d.spectrum.values.size(); ++i)
    if (d.spectrum.values(i) > d.spectrum.values(best)) best = i;

  const double total = d.eigenvalues.sum();
  DoaEstimate out;
  out.direction = dict.directions[static_cast<std::size_t>(best)];
  out.residual = 1.0 / d.spectrum.values(best);
  out.block_index = coeffs.block_index;
  out.block_time_s = coeffs.block_time_s;
  out.confidence =
      total > 0.0 ? d.eigenvalues(d.eigenvalues.size() - 1) / total : 0.0;
  return out;
}

}  // namespace shdoa
