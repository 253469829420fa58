//
// Copyright 2026 The plrvo Authors
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
//

#ifndef PLRVO_OPTIMIZER_H_
#define PLRVO_OPTIMIZER_H_

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "plrvo/accountant.h"
#include "plrvo/params.h"

namespace plrvo {

// Search for the Gamma seed (k, theta) and clip C maximizing
// J = C (k - 1) theta subject to
//   c0  clip_min <= C <= clip_max
//   c1  Pr[u <= 1 / scale_cap] <= gamma_cdf_tol   (large scales b = 1/u rare)
//   c2  epsilon(T-fold composition, delta*) <= epsilon*
//   c3  k > 1
//   c4  (k - 1) theta >= 1 / distortion_cap
//   mgf lambda_max * C * theta < 1
struct FeasibilityConfig {
  double clip_min = 1.0;
  double clip_max = 2.0;
  double gamma_cdf_tol = 1e-6;
  double distortion_cap = 10.0;
  double scale_cap = 10.0;
  PrivacyTarget target =
      *PrivacyTarget::Create(std::numeric_limits<double>::infinity(), 1e-5);

  // Job skeleton; the clip comes from the candidate point.
  std::int64_t steps_T = 1;
  double sampling_rate_zeta = 0.01;
  std::int64_t model_dim_N = 1;
  int lambda_max = kDefaultLambdaMax;

  // Grid sizes for the first phase.
  int k_points = 60;
  int theta_points = 60;
  int clip_points = 8;
  double k_min = 1.0 + 1e-3;
  double k_max = 1e6;
  double theta_min = 1e-7;

  // Intersect the k grid with the closed-form k bounds before searching.
  bool use_k_bounds_prefilter = false;
  // Accounting used inside the search. The returned point is always
  // re-checked with CheckFeasible (exact sum, full lambda grid).
  AccountOptions search_accounting = {SumMode::kExact,
                                      LambdaSearch::kCoarseToFine, {}};
  ExecutionOptions exec;
};

absl::Status ValidateConfig(const FeasibilityConfig& cfg);

// Largest theta on the grid for clip C: (1 - 1e-6) / (C (lambda_max + 1)).
double ThetaCap(const FeasibilityConfig& cfg, double clip_C);

struct ConstraintCheck {
  std::string name;  // "c0".."c4", "mgf"
  bool pass = false;
  // Positive when satisfied, in the constraint's natural units.
  double margin = 0.0;
};

struct ConstraintReport {
  std::vector<ConstraintCheck> checks;
  // Epsilon from the c2 evaluation; +inf when it could not be evaluated.
  double epsilon = 0.0;
  bool all_pass() const;
};

// Evaluates every constraint at (k, theta, C). c2 uses exact summation and
// the full lambda grid; it is skipped (margin -inf) when c3 or the MGF check
// fails, since the accountant is undefined there.
ConstraintReport CheckFeasible(double k, double theta, double clip_C,
                               const FeasibilityConfig& cfg);

// Closed-form (k1, k2), k1 <= k2, for one moment index eta >= 2.
absl::StatusOr<std::pair<double, double>> GammaPlrvKBounds(double clip_C,
                                                           double theta,
                                                           int eta);

// Intersection of GammaPlrvKBounds over eta = 2..lambda_max+1.
absl::StatusOr<std::pair<double, double>> GammaPlrvKRange(double clip_C,
                                                          double theta,
                                                          int lambda_max);

struct OptimizationResult {
  double k_star = 0.0;
  double theta_star = 0.0;
  double clip_star = 0.0;
  double achieved_epsilon = 0.0;
  double achieved_distortion = 0.0;
  double snr = 0.0;
  ConstraintReport constraint_report;
  // Diagnostics.
  // (k, C) grid columns bisected in the first phase; the rest were pruned.
  std::int64_t grid_columns_searched = 0;
  std::int64_t accountant_evaluations = 0;
  int refinement_rounds = 0;
};

// Deterministic two-phase search: a log grid over (k, theta) times an even
// grid over C, then coordinate-wise golden-section refinement of
// phi(k, C) = C (k - 1) theta_max(k, C) around the best grid point, where
// theta_max is the largest feasible theta for the pair. Fails with
// InfeasibleError when no grid point is feasible.
//
// For fixed (k, C) the feasible theta form an interval: c1 and c4 hold for
// all theta above a threshold, while epsilon is nondecreasing in theta and
// the MGF check holds below one. Each grid column is therefore searched by
// bisection rather than exhaustively, and columns whose largest grid
// objective cannot beat the incumbent are skipped.
absl::StatusOr<OptimizationResult> Solve(const FeasibilityConfig& cfg);

namespace internal {

// Log-spaced grid of `count` points over [lo, hi]; count == 1 gives {lo}.
std::vector<double> LogGrid(double lo, double hi, int count);
// Evenly spaced grid; count == 1 or lo == hi gives {lo}.
std::vector<double> LinearGrid(double lo, double hi, int count);

// Epsilon at a point under the given accounting options.
absl::StatusOr<double> PointEpsilon(double k, double theta, double clip_C,
                                    const FeasibilityConfig& cfg,
                                    const AccountOptions& options);

// Constraints other than c2 (cheap, closed form).
bool CheapConstraintsPass(double k, double theta, double clip_C,
                          const FeasibilityConfig& cfg);

}  // namespace internal
}  // namespace plrvo

#endif  // PLRVO_OPTIMIZER_H_
