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

#include "shdoa/lra.hpp"

namespace shdoa {

/// Conventional SHD-MUSIC pseudospectrum over the dictionary grid:
/// P(x) = 1 / ||E_n^H alpha_N(x)||^2 with E_n the noise subspace of the
/// SH-domain spatial covariance matrix.
struct Pseudospectrum {
  RVec values;
  int block_index = 0;
  bool scm_rank_deficient = false;  // fewer columns than C; loading applied
};

Pseudospectrum music_pseudospectrum(const CoefficientMatrix& coeffs,
                                    const MdpDictionary& dict,
                                    int n_sources = 1);

/// Peak of the pseudospectrum. residual is the noise-subspace projection
/// norm at the peak; confidence the SCM eigenvalue energy ratio.
DoaEstimate shd_music(const CoefficientMatrix& coeffs,
                      const MdpDictionary& dict, int n_sources = 1);

/// Instrumentation: eigendecompositions since the last reset.
long eig_call_count();
void reset_eig_call_count();

}  // namespace shdoa
