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

#include "testing/oracles.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "boost/math/distributions/chi_squared.hpp"

namespace onesided::testing {
namespace {

double SimpsonStep(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return SimpsonStep(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         SimpsonStep(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double Integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  // Pre-split so a kink or narrow peak is never skipped by the first
  // coarse estimate.
  constexpr int kPieces = 64;
  double total = 0.0;
  const double width = (b - a) / kPieces;
  for (int i = 0; i < kPieces; ++i) {
    const double lo = a + i * width;
    const double hi = (i == kPieces - 1) ? b : lo + width;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += SimpsonStep(f, lo, hi, fa, fm, fb, whole, tol / kPieces, 40);
  }
  return total;
}

GofResult ChiSquareGof(std::span<const int64_t> observed,
                       std::span<const double> expected_probs, int64_t draws,
                       double min_expected) {
  GofResult result;
  double obs_acc = 0.0;
  double exp_acc = 0.0;
  int cells = 0;
  std::vector<std::pair<double, double>> merged;
  for (size_t i = 0; i < observed.size(); ++i) {
    obs_acc += static_cast<double>(observed[i]);
    exp_acc += expected_probs[i] * static_cast<double>(draws);
    if (exp_acc >= min_expected) {
      merged.emplace_back(obs_acc, exp_acc);
      obs_acc = 0.0;
      exp_acc = 0.0;
    }
  }
  if (exp_acc > 0 || obs_acc > 0) {
    if (merged.empty()) {
      merged.emplace_back(obs_acc, exp_acc);
    } else {
      merged.back().first += obs_acc;
      merged.back().second += exp_acc;
    }
  }
  for (const auto& [o, e] : merged) {
    result.statistic += (o - e) * (o - e) / e;
    ++cells;
  }
  result.degrees_of_freedom = std::max(1, cells - 1);
  boost::math::chi_squared dist(result.degrees_of_freedom);
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  return result;
}

double HockeyStickDelta(std::span<const double> probs, int64_t shift,
                        double epsilon) {
  const auto n = static_cast<int64_t>(probs.size());
  auto p = [&](int64_t x) {
    return (x < 0 || x >= n) ? 0.0 : probs[static_cast<size_t>(x)];
  };
  const double scale = std::exp(epsilon);
  double one = 0.0;
  double two = 0.0;
  // Release distributions P(y) = p(y) and Q(y) = p(y - shift).
  for (int64_t y = 0; y < n + shift; ++y) {
    const double py = p(y);
    const double qy = p(y - shift);
    one += std::max(0.0, py - scale * qy);
    two += std::max(0.0, qy - scale * py);
  }
  return std::max(one, two);
}

double AttackSuccessOracle(std::span<const double> noise_pmf, int64_t bins) {
  const auto m = static_cast<int64_t>(noise_pmf.size()) - 1;
  // diff[t + m] = Pr(j - j' = t).
  std::vector<double> diff(static_cast<size_t>(2 * m + 1), 0.0);
  for (int64_t a = 0; a <= m; ++a) {
    for (int64_t b = 0; b <= m; ++b) {
      diff[static_cast<size_t>(a - b + m)] +=
          noise_pmf[static_cast<size_t>(a)] * noise_pmf[static_cast<size_t>(b)];
    }
  }
  auto pr_eq = [&](int64_t t) {
    return (t < -m || t > m) ? 0.0 : diff[static_cast<size_t>(t + m)];
  };
  auto pr_lt = [&](int64_t t) {
    double s = 0.0;
    for (int64_t u = -m; u < std::min(t, m + 1); ++u) s += pr_eq(u);
    return s;
  };
  const int64_t others = bins - 1;
  double success = 0.0;
  for (int64_t t = -m + 1; t <= m + 1; ++t) {
    const double victim = pr_eq(t - 1);
    if (victim == 0.0) continue;
    const double eq = pr_eq(t);
    const double lt = pr_lt(t);
    double win = 0.0;
    for (int64_t k = 0; k <= others; ++k) {
      win += static_cast<double>(Choose(others, k)) * std::pow(eq, k) *
             std::pow(lt, others - k) / static_cast<double>(k + 1);
    }
    success += victim * win;
  }
  return success;
}

long double Choose(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0.0L;
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  }
  return c;
}

}  // namespace onesided::testing
