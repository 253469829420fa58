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

#include "plrvo/distortion.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "plrvo/numerics.h"
#include "plrvo/status.h"

namespace plrvo {

DistortionReport PlrvDistortion(const GammaPlrvParams& params) {
  if (params.k() <= 1.0) {
    return {"plrvo", std::numeric_limits<double>::infinity(), false};
  }
  return {"plrvo", 1.0 / ((params.k() - 1.0) * params.theta()), true};
}

absl::StatusOr<double> PlrvDistortionByQuadrature(
    const GammaPlrvParams& params) {
  const double k = params.k();
  const double theta = params.theta();
  if (k <= 1.0) {
    return NonConvergenceError(absl::StrCat(
        "E|z| diverges for shape k = ", k, " <= 1; quadrature cannot converge"));
  }
  // Substituting s = z theta keeps the panel grid independent of the scale.
  PLRVO_ASSIGN_OR_RETURN(
      double integral,
      IntegrateDecaying(
          [k](double s) { return std::exp(-k * std::log1p(s)); }, 0.0));
  return integral / theta;
}

double GaussianDistortion(const GaussianParams& params, double clip_C) {
  return clip_C * params.sigma() * std::sqrt(2.0 / std::numbers::pi);
}

absl::StatusOr<double> GaussianDistortion(double sigma, double clip_C) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sigma must be >= 0, got ", sigma));
  }
  if (!(clip_C >= 0.0) || !std::isfinite(clip_C)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip must be >= 0, got ", clip_C));
  }
  return clip_C * sigma * std::sqrt(2.0 / std::numbers::pi);
}

DistortionReport GaussianDistortionReport(const GaussianParams& params,
                                          double clip_C) {
  return {"gaussian", GaussianDistortion(params, clip_C), true};
}

absl::StatusOr<double> Snr(const GammaPlrvParams& params, double clip_C) {
  if (params.k() <= 1.0) {
    return DomainError(
        absl::StrCat("SNR requires shape k > 1, got ", params.k()));
  }
  if (!(clip_C > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip must be > 0, got ", clip_C));
  }
  return clip_C * (params.k() - 1.0) * params.theta();
}

absl::StatusOr<double> L1L2VolumeLogRatio(std::int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be >= 1, got ", n));
  }
  const double dn = static_cast<double>(n);
  return dn * std::log(2.0 / std::sqrt(std::numbers::pi)) +
         internal::LogGammaUnchecked(dn / 2.0 + 1.0) -
         internal::LogGammaUnchecked(dn + 1.0);
}

}  // namespace plrvo
