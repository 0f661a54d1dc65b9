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

#include "shdoa/metrics.hpp"

#include <cmath>

#include "shdoa/errors.hpp"

namespace shdoa {

double angular_error_deg(const Direction& est, const Direction& truth) {
  const double dot =
      std::clamp(est.unit_vector().dot(truth.unit_vector()), -1.0, 1.0);
  return rad2deg(std::acos(dot));
}

TrialResult make_trial(const Direction& truth, const Direction& estimate) {
  TrialResult t;
  t.truth = truth;
  t.estimate = estimate;
  t.psi_e_deg = angular_error_deg(estimate, truth);
  t.anomalous = is_anomalous(t.psi_e_deg);
  return t;
}

double probability_of_detection(const std::vector<TrialResult>& results) {
  if (results.empty())
    throw ConfigError("probability_of_detection: no estimates");
  std::size_t detected = 0;
  for (const TrialResult& r : results)
    if (!r.anomalous) ++detected;
  return static_cast<double>(detected) / static_cast<double>(results.size());
}

std::optional<double> doa_rmse(const std::vector<TrialResult>& results) {
  double sum_sq = 0.0;
  std::size_t n = 0;
  for (const TrialResult& r : results) {
    if (r.anomalous) continue;
    sum_sq += r.psi_e_deg * r.psi_e_deg;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return std::sqrt(sum_sq / static_cast<double>(n));
}

}  // namespace shdoa
