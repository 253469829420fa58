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

#include "plrvo/params.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "plrvo/status.h"

namespace plrvo {
namespace {

bool PositiveFinite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

absl::StatusOr<GammaPlrvParams> GammaPlrvParams::Create(double k,
                                                        double theta) {
  if (!PositiveFinite(k) || !PositiveFinite(theta)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Gamma seed requires k > 0 and theta > 0, got k=", k,
        " theta=", theta));
  }
  return GammaPlrvParams(k, theta);
}

absl::StatusOr<GaussianParams> GaussianParams::Create(double sigma) {
  if (!PositiveFinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gaussian noise multiplier must be > 0, got ", sigma));
  }
  return GaussianParams(sigma);
}

absl::StatusOr<LaplaceParams> LaplaceParams::Create(double b) {
  if (!PositiveFinite(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be > 0, got ", b));
  }
  return LaplaceParams(b);
}

std::string_view MechanismName(const Mechanism& mechanism) {
  switch (mechanism.index()) {
    case 0:
      return "plrvo";
    case 1:
      return "gaussian";
    default:
      return "laplace";
  }
}

absl::StatusOr<AccountingJob> AccountingJob::Create(
    std::int64_t steps_T, double sampling_rate_zeta, std::int64_t model_dim_N,
    double clip_C, double delta, int lambda_max) {
  if (steps_T < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("steps_T must be >= 1, got ", steps_T));
  }
  if (!(sampling_rate_zeta >= 0.0 && sampling_rate_zeta <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sampling_rate_zeta must lie in [0, 1], got ", sampling_rate_zeta));
  }
  if (model_dim_N < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("model_dim_N must be >= 1, got ", model_dim_N));
  }
  if (!PositiveFinite(clip_C)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip_C must be > 0, got ", clip_C));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (lambda_max < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("lambda_max must be >= 1, got ", lambda_max));
  }
  AccountingJob job;
  job.steps_T_ = steps_T;
  job.zeta_ = sampling_rate_zeta;
  job.model_dim_N_ = model_dim_N;
  job.clip_C_ = clip_C;
  job.delta_ = delta;
  job.lambda_max_ = lambda_max;
  return job;
}

absl::StatusOr<AccountingJob> AccountingJob::WithClip(double clip_C) const {
  return Create(steps_T_, zeta_, model_dim_N_, clip_C, delta_, lambda_max_);
}

absl::StatusOr<AccountingJob> AccountingJob::WithSteps(
    std::int64_t steps_T) const {
  return Create(steps_T, zeta_, model_dim_N_, clip_C_, delta_, lambda_max_);
}

absl::StatusOr<AccountingJob> AccountingJob::WithLambdaMax(
    int lambda_max) const {
  return Create(steps_T_, zeta_, model_dim_N_, clip_C_, delta_, lambda_max);
}

absl::StatusOr<AccountingJob> AccountingJob::WithModelDim(
    std::int64_t model_dim_N) const {
  return Create(steps_T_, zeta_, model_dim_N, clip_C_, delta_, lambda_max_);
}

absl::StatusOr<PrivacyTarget> PrivacyTarget::Create(double epsilon_star,
                                                    double delta_star) {
  if (!(epsilon_star > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon_star must be > 0, got ", epsilon_star));
  }
  if (!(delta_star > 0.0 && delta_star < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta_star must lie in (0, 1), got ", delta_star));
  }
  return PrivacyTarget(epsilon_star, delta_star);
}

long MaxAdmissibleLambda(double clip_C, double theta) {
  const double inverse = 1.0 / (clip_C * theta);
  if (!std::isfinite(inverse) ||
      inverse >= static_cast<double>(kDefaultPlrvLambdaCap) + 1.0) {
    return kDefaultPlrvLambdaCap;
  }
  return static_cast<long>(std::floor(inverse)) - 1;
}

absl::StatusOr<int> DefaultLambdaMax(const Mechanism& mechanism,
                                     double clip_C, int cap) {
  const auto* plrv = std::get_if<GammaPlrvParams>(&mechanism);
  if (plrv == nullptr) return kDefaultLambdaMax;
  const long admissible = MaxAdmissibleLambda(clip_C, plrv->theta());
  if (admissible < 1) {
    return MgfDomainViolation(
        admissible, absl::StrCat("no moment order is admissible for C=",
                                 clip_C, " theta=", plrv->theta()));
  }
  return static_cast<int>(std::min<long>(cap, admissible));
}

absl::Status ValidateMgfDomain(int lambda_max, double clip_C,
                               const GammaPlrvParams& params) {
  const double product = lambda_max * clip_C * params.theta();
  if (product < 1.0) return absl::OkStatus();
  return MgfDomainViolation(
      MaxAdmissibleLambda(clip_C, params.theta()),
      absl::StrCat("Gamma MGF undefined: lambda_max * C * theta = ", product,
                   " >= 1 (lambda_max=", lambda_max, ", C=", clip_C,
                   ", theta=", params.theta(), ")"));
}

absl::Status Validate(const AccountingJob& job,
                      const GammaPlrvParams& params) {
  return ValidateMgfDomain(job.lambda_max(), job.clip_C(), params);
}

}  // namespace plrvo
