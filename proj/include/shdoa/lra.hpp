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

#include "shdoa/encode.hpp"
#include "shdoa/sh.hpp"
#include "shdoa/types.hpp"

namespace shdoa {

/// Column-normalized coefficient matrix: every order-n sub-block of every
/// column is rescaled to the ideal single-source norm |S|*sqrt(4pi(2n+1)).
/// Zero columns are dropped; near-zero blocks inside nonzero columns are
/// left at zero and counted rather than amplified.
struct NormalizedMatrix {
  CMat entries;      // C x F_kept
  RVec magnitudes;   // per kept column |S(k)| estimate
  int order = 0;
  int block_index = 0;
  double block_time_s = 0.0;
  int zero_block_count = 0;
};

/// Rank-1 estimate of the dominant modal directional pattern.
struct MdpEstimate {
  CVec alpha_hat;            // sqrt(4pi)(N+1) * u_1
  double sigma1 = 0.0;
  double energy_ratio = 0.0;  // sigma_1^2 / sum_i sigma_i^2
  int order = 0;
  int block_index = 0;
  double block_time_s = 0.0;
};

struct DoaEstimate {
  Direction direction;
  double residual = 0.0;
  int block_index = 0;
  double block_time_s = 0.0;
  double confidence = 0.0;
};

/// Mean-based per-column magnitude estimate of the dominant source:
/// 1/(N+1) sum_n ||c_n|| / sqrt(4pi(2n+1)).
double estimate_magnitude(const Eigen::Ref<const CVec>& column, int order);

NormalizedMatrix normalize(const CoefficientMatrix& coeffs);

/// Best rank-1 factor via SVD; exactly one decomposition per block.
MdpEstimate rank1_extract(const NormalizedMatrix& normalized, int order);

/// Nearest dictionary pattern after rotating the estimate's global phase
/// so its order-0 entry is real positive. Ties break to the lowest grid
/// index.
DoaEstimate match_doa(const MdpEstimate& estimate, const MdpDictionary& dict);

/// normalize -> rank1_extract -> match_doa.
DoaEstimate localize_block(const CoefficientMatrix& coeffs,
                           const MdpDictionary& dict);

/// Instrumentation: number of SVD calls since the last reset.
long svd_call_count();
void reset_svd_call_count();

}  // namespace shdoa
