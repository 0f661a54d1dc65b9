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

#include "shdoa/lra.hpp"

#include <atomic>
#include <cmath>

#include "shdoa/errors.hpp"

namespace shdoa {

namespace {

std::atomic<long> g_svd_calls{0};

double block_target_norm(int n) { return std::sqrt(4.0 * kPi * (2 * n + 1)); }

}  // namespace

long svd_call_count() { return g_svd_calls.load(); }
void reset_svd_call_count() { g_svd_calls.store(0); }

double estimate_magnitude(const Eigen::Ref<const CVec>& column, int order) {
  if (column.size() != sh_count(order))
    throw ConfigError("estimate_magnitude: column length must be (N+1)^2");
  double acc = 0.0;
  for (int n = 0; n <= order; ++n)
    acc += column.segment(n * n, 2 * n + 1).norm() / block_target_norm(n);
  return acc / (order + 1);
}

NormalizedMatrix normalize(const CoefficientMatrix& coeffs) {
  const int order = coeffs.order;
  const int c = sh_count(order);
  if (coeffs.entries.rows() != c)
    throw ConfigError("normalize: row count must be (N+1)^2");

  NormalizedMatrix out;
  out.order = order;
  out.block_index = coeffs.block_index;
  out.block_time_s = coeffs.block_time_s;
  out.entries.resize(c, coeffs.entries.cols());
  out.magnitudes.resize(coeffs.entries.cols());

  Eigen::Index kept = 0;
  for (Eigen::Index f = 0; f < coeffs.entries.cols(); ++f) {
    const auto col = coeffs.entries.col(f);
    const double col_norm = col.norm();
    if (col_norm == 0.0) continue;  // dropped

    const double mag = estimate_magnitude(col, order);
    auto dst = out.entries.col(kept);
    for (int n = 0; n <= order; ++n) {
      const auto blk = col.segment(n * n, 2 * n + 1);
      const double blk_norm = blk.norm();
      if (blk_norm < 1e-12 * col_norm) {
        dst.segment(n * n, 2 * n + 1).setZero();
        ++out.zero_block_count;
      } else {
        dst.segment(n * n, 2 * n + 1) =
            blk * (mag * block_target_norm(n) / blk_norm);
      }
    }
    out.magnitudes(kept) = mag;
    ++kept;
  }
  out.entries.conservativeResize(Eigen::NoChange, kept);
  out.magnitudes.conservativeResize(kept);
  return out;
}

MdpEstimate rank1_extract(const NormalizedMatrix& normalized, int order) {
  if (normalized.order != order)
    throw ConfigError("rank1_extract: order mismatch");
  if (normalized.entries.cols() == 0)
    throw NumericError("rank1_extract: no nonzero columns in block " +
                       std::to_string(normalized.block_index));

  g_svd_calls.fetch_add(1);
  Eigen::BDCSVD<CMat> svd(normalized.entries, Eigen::ComputeThinU);
  if (svd.info() != Eigen::Success)
    throw NumericError("rank1_extract: SVD did not converge in block " +
                       std::to_string(normalized.block_index));

  MdpEstimate est;
  est.order = order;
  est.block_index = normalized.block_index;
  est.block_time_s = normalized.block_time_s;
  est.alpha_hat = mdp_norm(order) * svd.matrixU().col(0);
  est.sigma1 = svd.singularValues()(0);
  const double total = svd.singularValues().squaredNorm();
  est.energy_ratio = total > 0.0 ? est.sigma1 * est.sigma1 / total : 0.0;
  return est;
}

DoaEstimate match_doa(const MdpEstimate& estimate, const MdpDictionary& dict) {
  if (dict.size() == 0) throw ConfigError("match_doa: empty dictionary");
  if (dict.order != estimate.order)
    throw ConfigError("match_doa: dictionary order mismatch");

  // The ideal pattern has a real positive order-0 entry (4*pi*Y_00); align
  // the estimate's global phase the same way so the Euclidean distance is
  // phase-invariant.
  CVec a = estimate.alpha_hat;
  const Complex a0 = a(0);
  if (std::abs(a0) > 0.0) a *= std::conj(a0) / std::abs(a0);

  // ||a - d_i||^2 = ||a||^2 + ||d_i||^2 - 2 Re<d_i, a>; all dictionary
  // norms are equal, so maximize the correlation term.
  const RVec score = (dict.patterns.adjoint() * a).real();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < score.size(); ++i)
    if (score(i) > score(best)) best = i;

  DoaEstimate out;
  out.direction = dict.directions[static_cast<std::size_t>(best)];
  out.residual = std::max(0.0, a.squaredNorm() +
                                   dict.patterns.col(best).squaredNorm() -
                                   2.0 * score(best));
  out.block_index = estimate.block_index;
  out.block_time_s = estimate.block_time_s;
  out.confidence = estimate.energy_ratio;
  return out;
}

DoaEstimate localize_block(const CoefficientMatrix& coeffs,
                           const MdpDictionary& dict) {
  return match_doa(rank1_extract(normalize(coeffs), coeffs.order), dict);
}

}  // namespace shdoa
