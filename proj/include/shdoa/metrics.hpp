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

#include <optional>
#include <string>
#include <vector>

#include "shdoa/types.hpp"

namespace shdoa {

/// Estimates with |psi_e| at or above this are anomalous (strict < below
/// counts as detected).
inline constexpr double kAnomalyThresholdDeg = 10.0;

/// Great-circle angular error arccos(est . truth), in [0, 180] degrees.
double angular_error_deg(const Direction& est, const Direction& truth);

inline bool is_anomalous(double psi_e_deg) {
  return std::abs(psi_e_deg) >= kAnomalyThresholdDeg;
}

struct TrialResult {
  Direction truth;
  Direction estimate;
  double psi_e_deg = 0.0;
  bool anomalous = false;
  std::string method;
  double t60_s = 0.0;
  double snr_db = 0.0;
  int run = 0;
  int block = 0;
};

TrialResult make_trial(const Direction& truth, const Direction& estimate);

/// Fraction of nonanomalous estimates, N_a / N_T.
double probability_of_detection(const std::vector<TrialResult>& results);

/// RMS of psi_e over nonanomalous estimates only; empty when none qualify.
std::optional<double> doa_rmse(const std::vector<TrialResult>& results);

}  // namespace shdoa
