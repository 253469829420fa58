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

#ifndef PLRVO_ACCOUNTANT_H_
#define PLRVO_ACCOUNTANT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "plrvo/parallel.h"
#include "plrvo/params.h"

namespace plrvo {

// Moments accounting for the subsampled Gaussian, Laplace and Gamma-seeded
// randomized-scale Laplace ("PLRV") mechanisms.
//
// Every per-step moment has the form
//
//   alpha(lambda) = log sum_{eta=0}^{lambda+1} C(lambda+1, eta)
//                       (1 - zeta)^(lambda+1-eta) zeta^eta  H(x, eta)
//
// where H is the eta-th moment of the likelihood ratio of the shifted to the
// centered noise:
//
//   Laplace(b):   F(x, eta) = [eta e^{(eta-1)x/b} + (eta-1) e^{-eta x/b}]
//                             / (2 eta - 1)
//   Gamma seed:   G(x, eta) = eta/(2eta-1) M_u((eta-1)x)
//                             + (eta-1)/(2eta-1) M_u(-eta x),
//                 M_u(t) = (1 - t theta)^-k
//   Gaussian:     exp((eta^2 - eta) / (2 sigma^2))
//
// For eta in {0, 1} one branch coefficient is zero and the other branch has
// MGF argument zero, so H = 1 exactly; these are handled as absent log terms.
// The Laplace-family multivariate bound sums the univariate moment over the
// majorization set x_i = C (sqrt(i) - sqrt(i-1)), i = 1..N.
//
// All sums are carried out in log space.

// ln M_u(t) = -k ln(1 - t theta). Requires t * theta < 1.
absl::StatusOr<double> GammaMgfLog(const GammaPlrvParams& params, double t);

// G(x, eta) in linear space.
absl::StatusOr<double> PlrvGTerm(const GammaPlrvParams& params, double x,
                                 int eta);

absl::StatusOr<double> PlrvUnivariateLogMoment(const GammaPlrvParams& params,
                                               double x, double zeta,
                                               int lambda);

absl::StatusOr<double> LaplaceUnivariateLogMoment(const LaplaceParams& params,
                                                  double x, double zeta,
                                                  int lambda);

// Per-step moment of the subsampled Gaussian mechanism; independent of the
// clip (sigma is a noise multiplier).
absl::StatusOr<double> GaussianSubsampledLogMoment(const GaussianParams& params,
                                                   double zeta, int lambda);

// Strategy for the sum over N majorization coordinates.
enum class SumMode {
  kExact,
  // Exact for the first 1024 indices, then trapezoid integration in the
  // index over a geometric grid (ratio 1.01). Approximate; see
  // MultivariateResult::error_estimate.
  kAccelerated,
};

struct MultivariateResult {
  // One per requested lambda.
  std::vector<double> log_moments;
  // Set in accelerated mode: |I(r) - I(r^2)| / 3, summed over lambdas' max.
  std::optional<double> error_estimate;
};

// Per-step multivariate moments for several orders at once, sharing one pass
// over the coordinates. clip may be 0 here (all moments vanish).
absl::StatusOr<MultivariateResult> PlrvMultivariateLogMoments(
    const GammaPlrvParams& params, double zeta, std::int64_t model_dim_N,
    double clip_C, std::span<const int> lambdas, SumMode mode = SumMode::kExact,
    const ExecutionOptions& exec = {});

absl::StatusOr<MultivariateResult> LaplaceMultivariateLogMoments(
    const LaplaceParams& params, double zeta, std::int64_t model_dim_N,
    double clip_C, std::span<const int> lambdas, SumMode mode = SumMode::kExact,
    const ExecutionOptions& exec = {});

// Single-order conveniences over a job. Validate(job, params) must pass.
absl::StatusOr<double> PlrvMultivariateLogMoment(
    const GammaPlrvParams& params, const AccountingJob& job, int lambda,
    const ExecutionOptions& exec = {});
absl::StatusOr<double> LaplaceMultivariateLogMoment(
    const LaplaceParams& params, const AccountingJob& job, int lambda,
    const ExecutionOptions& exec = {});

// Pure-epsilon bound C / b of the unsampled Laplace mechanism under l1
// clipping.
double LaplacePrivacyLossBound(const LaplaceParams& params, double clip_C);

// alpha(lambda) samples on an integer grid, plus where they came from.
// `composed_steps` is 1 for a per-step curve and T after Compose(curve, T).
struct CurveMetadata {
  std::string mechanism;
  std::map<std::string, double> mechanism_params;
  std::optional<AccountingJob> job;
  std::int64_t composed_steps = 1;
};

class LogMomentCurve {
 public:
  // Checks alpha >= 0 and nondecreasing in lambda, each up to a 1e-10
  // rounding slack. The grid may be sparse but must be non-empty with
  // lambda >= 1.
  static absl::StatusOr<LogMomentCurve> Create(CurveMetadata metadata,
                                               std::map<int, double> alpha);

  const CurveMetadata& metadata() const { return metadata_; }
  const std::map<int, double>& alpha() const { return alpha_; }

 private:
  LogMomentCurve(CurveMetadata m, std::map<int, double> a)
      : metadata_(std::move(m)), alpha_(std::move(a)) {}
  CurveMetadata metadata_;
  std::map<int, double> alpha_;
};

// alpha_total = T * alpha_step.
absl::StatusOr<LogMomentCurve> Compose(const LogMomentCurve& curve,
                                       std::int64_t steps_T);

struct EpsilonResult {
  double epsilon;
  int argmin_lambda;
};

// eps(delta) = min over the curve's grid of
//   alpha/l + log(l/(l+1)) - (log delta + log(l+1))/l,
// ties broken toward the smaller lambda.
absl::StatusOr<EpsilonResult> EpsilonFromDelta(const LogMomentCurve& curve,
                                               double delta);

// delta(eps) = min over the grid of exp(alpha - l eps), clamped to <= 1.
absl::StatusOr<double> DeltaFromEpsilon(const LogMomentCurve& curve,
                                        double epsilon);

// Coarse-to-fine lambda search: evaluate {1, 2, 4, ...} and lambda_max, then
// every integer within one octave of the coarse argmin.
std::vector<int> CoarseLambdaGrid(int lambda_max);
std::vector<int> FineLambdaGrid(int coarse_argmin, int lambda_max);

// Runs the coarse-to-fine search against an arbitrary evaluator that returns
// composed alpha values for the requested orders. Returns the epsilon over
// every order that was evaluated and the evaluated points.
using AlphaEvaluator =
    std::function<absl::StatusOr<std::map<int, double>>(const std::vector<int>&)>;
absl::StatusOr<EpsilonResult> EpsilonCoarseToFine(
    const AlphaEvaluator& composed_alpha, int lambda_max, double delta,
    std::map<int, double>* evaluated = nullptr);

// Coarse-to-fine applied to an existing (dense) curve by lookup.
absl::StatusOr<EpsilonResult> EpsilonFromDeltaCoarseToFine(
    const LogMomentCurve& curve, double delta);

enum class LambdaSearch { kFull, kCoarseToFine };

struct AccountOptions {
  SumMode mode = SumMode::kExact;
  LambdaSearch search = LambdaSearch::kFull;
  ExecutionOptions exec;
};

// Per-step curve for a mechanism and job on the given orders.
absl::StatusOr<LogMomentCurve> PerStepCurve(
    const Mechanism& mechanism, const AccountingJob& job,
    std::span<const int> lambdas, const AccountOptions& options = {},
    std::optional<double>* error_estimate = nullptr);

struct AccountResult {
  double epsilon = 0.0;
  int argmin_lambda = 1;
  double per_step_alpha_at_argmin = 0.0;
  // Every per-step point that was evaluated.
  LogMomentCurve per_step_curve;
  std::optional<double> error_estimate;
};

// Full pipeline: per-step moments, T-fold composition, conversion at
// job.delta(). For the Gamma seed Validate(job, params) is enforced.
absl::StatusOr<AccountResult> Account(const Mechanism& mechanism,
                                      const AccountingJob& job,
                                      const AccountOptions& options = {});

namespace internal {

// Log binomial weights log C(l+1, eta) (1-zeta)^(l+1-eta) zeta^eta for a set
// of orders, and the per-order log-sum-exp against a table of log H values.
class MomentKernel {
 public:
  MomentKernel(double zeta, std::span<const int> lambdas);

  int max_eta() const { return max_eta_; }
  std::size_t size() const { return lambdas_.size(); }

  // log_h[eta] for eta = 0..max_eta(); writes one log moment per order.
  void Combine(std::span<const double> log_h, std::span<double> out) const;

 private:
  std::vector<int> lambdas_;
  std::vector<std::vector<double>> log_weights_;
  int max_eta_ = 1;
};

// log G(x, eta) / log F(x, eta) for eta = 0..log_h.size()-1. Arguments are
// assumed valid.
void PlrvLogG(double k, double theta, double x, std::span<double> log_h);
void LaplaceLogF(double b, double x, std::span<double> log_h);

}  // namespace internal
}  // namespace plrvo

#endif  // PLRVO_ACCOUNTANT_H_
