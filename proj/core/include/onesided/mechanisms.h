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

#ifndef ONESIDED_MECHANISMS_H_
#define ONESIDED_MECHANISMS_H_

// One-sided (non-negative) noise distributions and their parameter solvers.
//
// Every family here places zero mass on negative values, so a release
// f(X) + z never undershoots the true answer (or, with Sign::kUndervalued,
// f(X) - z never overshoots it). The one-sided support forces approximate
// DP: whatever mass one neighbour can produce and the other cannot is paid
// for with delta. The solvers below pick the smallest parameters whose
// uncovered tail mass stays within the requested delta.

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "onesided/privacy_budget.h"

namespace onesided {

enum class Sign { kOvervalued, kUndervalued };

enum class Family {
  kTruncLaplace,
  kDoubleGeometric,
  kNegativeBinomial,
  kDiscreteUniform,
  kBinomial,
};

// Laplace with mode `mu` and scale `b`, truncated to [0, 2 mu] (doubly) or
// [0, inf) (singly) and renormalised by `inflation`.
struct TruncLaplaceParams {
  double b = 0.0;
  double mu = 0.0;
  double inflation = 1.0;
  bool doubly_truncated = true;

  friend bool operator==(const TruncLaplaceParams&,
                         const TruncLaplaceParams&) = default;
};

// Two-sided geometric centred on n and truncated to {0, ..., 2n}:
// pmf(x) = inflation * r^|n - x|.
//
// `r` is the per-unit decay e^{-epsilon / sensitivity}; for unit sensitivity
// this is e^{-epsilon}.
struct DoubleGeometricParams {
  int64_t n = 0;
  double epsilon = 0.0;
  double inflation = 1.0;
  double r = 0.0;

  friend bool operator==(const DoubleGeometricParams&,
                         const DoubleGeometricParams&) = default;
};

// pmf(k) = C(k + r - 1, r - 1) (1 - p)^k p^r over k >= 0.
struct NegBinParams {
  double p = 0.0;
  int64_t r = 0;

  friend bool operator==(const NegBinParams&, const NegBinParams&) = default;
};

// Uniform over {0, ..., n}.
struct DiscreteUniformParams {
  int64_t n = 0;

  friend bool operator==(const DiscreteUniformParams&,
                         const DiscreteUniformParams&) = default;
};

// Binomial(n, 1/2) over {0, ..., n}.
struct BinomialParams {
  int64_t n = 0;

  friend bool operator==(const BinomialParams&,
                         const BinomialParams&) = default;
};

using MechanismParams =
    std::variant<TruncLaplaceParams, DoubleGeometricParams, NegBinParams,
                 DiscreteUniformParams, BinomialParams>;

// Solved parameters for one family, the budget they were solved for, and
// the direction the noise is applied in.
struct MechanismSpec {
  MechanismParams params;
  PrivacyBudget budget;
  Sign sign = Sign::kOvervalued;

  Family family() const;
  // True for doubly truncated Laplace, double geometric, uniform, binomial.
  bool bounded_support() const;
  // True for every family except the truncated Laplace.
  bool integer_valued() const;

  friend bool operator==(const MechanismSpec&, const MechanismSpec&) = default;
};

std::string_view FamilyName(Family family);
absl::StatusOr<Family> ParseFamily(std::string_view name);
std::string_view SignName(Sign sign);
absl::StatusOr<Sign> ParseSign(std::string_view name);

// Checks the structural invariants of `spec` (positive scales, probabilities
// in range, budget fields finite).
absl::Status ValidateSpec(const MechanismSpec& spec);

// f(X) + noise for overvalued specs, f(X) - noise for undervalued ones.
double ApplyNoise(const MechanismSpec& spec, double true_value, double noise);

// ---------------------------------------------------------------------------
// Truncated Laplace

// mu = -(sensitivity / epsilon) ln(2 delta / (2 delta + e^epsilon - 1)),
// b = sensitivity / epsilon. The inflation constant is (1 - e^{-mu/b})^{-1}
// when doubly truncated and (1 - e^{-mu/b} / 2)^{-1} otherwise.
//
// Fails with FailedPrecondition when mu <= sensitivity, which happens once
// delta >= 1/2: the tail integral then no longer covers only [0, sensitivity).
absl::StatusOr<TruncLaplaceParams> SolveTruncLaplace(
    const PrivacyBudget& budget, bool doubly_truncated = true);

double TruncLaplacePdf(const TruncLaplaceParams& params, double x);
double TruncLaplaceCdf(const TruncLaplaceParams& params, double x);
// Inverse of TruncLaplaceCdf for u in [0, 1).
double TruncLaplaceQuantile(const TruncLaplaceParams& params, double u);

// Mass on [0, shift): the part of the distribution its shifted copy cannot
// produce. Equals the target delta for solved doubly truncated params.
double TruncLaplaceTailMass(const TruncLaplaceParams& params, double shift);

// ---------------------------------------------------------------------------
// Double geometric

// Normaliser (1 - r) / (1 + r - 2 r^{n+1}).
double DoubleGeometricInflation(double r, int64_t n);

// Unit sensitivity uses the closed form
//   n = ceil(-(1/epsilon) ln(delta (1 + r) / (1 - r + 2 r delta))).
// Larger sensitivities search for the smallest n with tail mass <= delta.
absl::StatusOr<DoubleGeometricParams> SolveDoubleGeometric(
    const PrivacyBudget& budget);

// Builds params for an explicit centre, e.g. to probe n - 1 in tests.
DoubleGeometricParams MakeDoubleGeometric(int64_t n, double epsilon,
                                          int64_t sensitivity = 1);

double DoubleGeometricLogPmf(const DoubleGeometricParams& params, int64_t x);
double DoubleGeometricPmf(const DoubleGeometricParams& params, int64_t x);

// Mass of the top `shift` support points {2n - shift + 1, ..., 2n}.
double DoubleGeometricTailMass(const DoubleGeometricParams& params,
                               int64_t shift);

// ---------------------------------------------------------------------------
// Negative binomial

// p = 1 - e^{-epsilon / sensitivity}; r = ceil(ln delta / ln p) for unit
// sensitivity, otherwise the smallest r whose mass on {0, ..., sensitivity-1}
// is at most delta.
absl::StatusOr<NegBinParams> SolveNegativeBinomial(const PrivacyBudget& budget);

double NegativeBinomialLogPmf(const NegBinParams& params, int64_t k);
double NegativeBinomialPmf(const NegBinParams& params, int64_t k);

// Mass on {0, ..., shift - 1}.
double NegativeBinomialTailMass(const NegBinParams& params, int64_t shift);

// Smallest K with cdf(K) >= mass.
int64_t NegativeBinomialQuantile(const NegBinParams& params, double mass);

// ---------------------------------------------------------------------------
// Padding heuristics: uniform and fair-coin binomial record counts.

enum class HeuristicFamily { kDiscreteUniform, kBinomial };

struct HeuristicAccounting {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Uniform on {0..n}: (0, min(1, sensitivity / (n + 1))).
// Binomial(n, 1/2): (ln C(n, sensitivity), 2^-n sum_{j<sensitivity} C(n, j)),
// or (0, 1) once sensitivity > n.
absl::StatusOr<HeuristicAccounting> AccountHeuristic(HeuristicFamily family,
                                                     int64_t n,
                                                     int64_t sensitivity);

// Spec whose budget is the accounting result for (family, n, sensitivity).
absl::StatusOr<MechanismSpec> MakeHeuristicSpec(HeuristicFamily family,
                                                int64_t n, int64_t sensitivity,
                                                Sign sign = Sign::kOvervalued);

double DiscreteUniformPmf(const DiscreteUniformParams& params, int64_t k);
double BinomialLogPmf(const BinomialParams& params, int64_t k);
double BinomialPmf(const BinomialParams& params, int64_t k);

// ---------------------------------------------------------------------------
// Poisson: diagnostic only, never offered as a mechanism.

struct PoissonRatioPoint {
  int64_t y = 0;
  double log_ratio = 0.0;
  double ratio = 0.0;
};

// ln(Pr(y | lambda) / Pr(y + shift | lambda)) = sum_{i=1}^{shift} ln(y + i)
// - shift ln(lambda).
double PoissonLogRatio(double lambda, int64_t shift, int64_t y);

// Ratio evaluated on y = 0 and a log-spaced integer grid ending at y_max.
// The ratios grow without bound, so no finite epsilon covers the Poisson.
absl::StatusOr<std::vector<PoissonRatioPoint>> PoissonDivergenceDiagnostic(
    double lambda, int64_t shift, int64_t y_max);

// ---------------------------------------------------------------------------
// Dispatch over MechanismSpec

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> support_max;
};

Moments MechanismMoments(const MechanismSpec& spec);

// Solves a budget for one of the three solver families (Laplace, geometric,
// negative binomial). `doubly_truncated` only affects the Laplace.
absl::StatusOr<MechanismSpec> SolveMechanism(Family family,
                                             const PrivacyBudget& budget,
                                             bool doubly_truncated = true,
                                             Sign sign = Sign::kOvervalued);

// Probability mass at integer x for integer families; for the Laplace,
// the density at x.
double Density(const MechanismSpec& spec, double x);

}  // namespace onesided

#endif  // ONESIDED_MECHANISMS_H_
