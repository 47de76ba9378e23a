// Copyright 2026 The Onesided Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "onesided/mechanisms.h"

namespace onesided {

double PoissonLogRatio(double lambda, int64_t shift, int64_t y) {
  double log_ratio = -static_cast<double>(shift) * std::log(lambda);
  for (int64_t i = 1; i <= shift; ++i) {
    log_ratio += std::log(static_cast<double>(y + i));
  }
  return log_ratio;
}

absl::StatusOr<std::vector<PoissonRatioPoint>> PoissonDivergenceDiagnostic(
    double lambda, int64_t shift, int64_t y_max) {
  if (!(lambda > 0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError("lambda must be > 0");
  }
  if (shift < 1) return absl::InvalidArgumentError("shift must be >= 1");
  if (y_max < shift) {
    return absl::InvalidArgumentError("y_max must be >= shift");
  }

  constexpr int kPointsPerDecade = 20;
  std::vector<int64_t> grid = {0};
  for (int i = 0;; ++i) {
    const auto y = static_cast<int64_t>(
        std::llround(std::pow(10.0, static_cast<double>(i) / kPointsPerDecade)));
    if (y >= y_max) break;
    if (y > grid.back()) grid.push_back(y);
  }
  grid.push_back(y_max);

  std::vector<PoissonRatioPoint> points;
  points.reserve(grid.size());
  for (int64_t y : grid) {
    const double log_ratio = PoissonLogRatio(lambda, shift, y);
    points.push_back({.y = y, .log_ratio = log_ratio,
                      .ratio = std::exp(log_ratio)});
  }
  return points;
}

}  // namespace onesided
