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

#ifndef PLRVO_PARAMS_H_
#define PLRVO_PARAMS_H_

#include <cstdint>
#include <string_view>
#include <variant>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace plrvo {

// Gamma seed of the randomized-scale Laplace noise: the inverse scale
// u = 1/b is Gamma distributed with shape k and scale theta.
class GammaPlrvParams {
 public:
  static absl::StatusOr<GammaPlrvParams> Create(double k, double theta);

  double k() const { return k_; }
  double theta() const { return theta_; }

  // Expected per-coordinate |z| is finite iff k > 1.
  bool has_finite_distortion() const { return k_ > 1.0; }

 private:
  GammaPlrvParams(double k, double theta) : k_(k), theta_(theta) {}
  double k_;
  double theta_;
};

// Noise multiplier; the noise standard deviation is clip * sigma.
class GaussianParams {
 public:
  static absl::StatusOr<GaussianParams> Create(double sigma);
  double sigma() const { return sigma_; }

 private:
  explicit GaussianParams(double sigma) : sigma_(sigma) {}
  double sigma_;
};

class LaplaceParams {
 public:
  static absl::StatusOr<LaplaceParams> Create(double b);
  double b() const { return b_; }

 private:
  explicit LaplaceParams(double b) : b_(b) {}
  double b_;
};

using Mechanism = std::variant<GammaPlrvParams, GaussianParams, LaplaceParams>;

// "plrvo", "gaussian" or "laplace".
std::string_view MechanismName(const Mechanism& mechanism);

// One accounting request. model_dim_N counts model coordinates (the length of
// the majorization set), not dataset records. A sampling rate of exactly 0 is
// accepted as the degenerate no-participation case.
class AccountingJob {
 public:
  static absl::StatusOr<AccountingJob> Create(std::int64_t steps_T,
                                              double sampling_rate_zeta,
                                              std::int64_t model_dim_N,
                                              double clip_C, double delta,
                                              int lambda_max);

  std::int64_t steps_T() const { return steps_T_; }
  double sampling_rate_zeta() const { return zeta_; }
  std::int64_t model_dim_N() const { return model_dim_N_; }
  double clip_C() const { return clip_C_; }
  double delta() const { return delta_; }
  int lambda_max() const { return lambda_max_; }

  absl::StatusOr<AccountingJob> WithClip(double clip_C) const;
  absl::StatusOr<AccountingJob> WithSteps(std::int64_t steps_T) const;
  absl::StatusOr<AccountingJob> WithLambdaMax(int lambda_max) const;
  absl::StatusOr<AccountingJob> WithModelDim(std::int64_t model_dim_N) const;

 private:
  AccountingJob() = default;
  std::int64_t steps_T_ = 1;
  double zeta_ = 0.0;
  std::int64_t model_dim_N_ = 1;
  double clip_C_ = 1.0;
  double delta_ = 1e-5;
  int lambda_max_ = 1;
};

// (epsilon*, delta*). epsilon* may be +inf, which makes the privacy
// constraint vacuous.
class PrivacyTarget {
 public:
  static absl::StatusOr<PrivacyTarget> Create(double epsilon_star,
                                              double delta_star);
  double epsilon_star() const { return epsilon_star_; }
  double delta_star() const { return delta_star_; }

 private:
  PrivacyTarget(double e, double d) : epsilon_star_(e), delta_star_(d) {}
  double epsilon_star_;
  double delta_star_;
};

inline constexpr int kDefaultLambdaMax = 64;
inline constexpr int kDefaultPlrvLambdaCap = 4096;

// floor(1 / (clip * theta)) - 1, saturated at kDefaultPlrvLambdaCap when the
// product underflows. May be < 1, meaning no moment order is admissible.
long MaxAdmissibleLambda(double clip_C, double theta);

// min(cap, MaxAdmissibleLambda) for the Gamma seed; kDefaultLambdaMax for
// the other mechanisms. Fails with MgfDomainViolation if no order is usable.
absl::StatusOr<int> DefaultLambdaMax(const Mechanism& mechanism,
                                     double clip_C,
                                     int cap = kDefaultPlrvLambdaCap);

// The Gamma MGF must exist at every argument the accountant evaluates; the
// largest is t = lambda_max * C, so lambda_max * C * theta < 1 is required.
absl::Status Validate(const AccountingJob& job, const GammaPlrvParams& params);

// Same check for raw (lambda_max, clip) pairs.
absl::Status ValidateMgfDomain(int lambda_max, double clip_C,
                               const GammaPlrvParams& params);

}  // namespace plrvo

#endif  // PLRVO_PARAMS_H_
