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

#ifndef PLRVO_DISTORTION_H_
#define PLRVO_DISTORTION_H_

#include <string>

#include "absl/status/statusor.h"
#include "plrvo/params.h"

namespace plrvo {

// Distortion is per coordinate: E|z_i| of one noise coordinate. For the
// Gamma seed it does not depend on the clip; for the Gaussian mechanism it
// scales with it (noise standard deviation is C * sigma).
struct DistortionReport {
  std::string mechanism;
  double per_coordinate_l1 = 0.0;
  bool finite = true;
};

// 1 / ((k - 1) theta) for k > 1; reported as not finite for k <= 1.
DistortionReport PlrvDistortion(const GammaPlrvParams& params);

// Integrates (1 + z theta)^-k over [0, inf). Requires k > 1.
absl::StatusOr<double> PlrvDistortionByQuadrature(
    const GammaPlrvParams& params);

// C * sigma * sqrt(2 / pi).
double GaussianDistortion(const GaussianParams& params, double clip_C);
// Same for a raw noise multiplier; sigma = 0 (no noise) is allowed here.
absl::StatusOr<double> GaussianDistortion(double sigma, double clip_C);

DistortionReport GaussianDistortionReport(const GaussianParams& params,
                                          double clip_C);

// Objective J = C / distortion = C (k - 1) theta. Requires k > 1.
absl::StatusOr<double> Snr(const GammaPlrvParams& params, double clip_C);

// ln(V_l1 / V_l2) for radius-C balls in n dimensions:
//   n ln(2 / sqrt(pi)) + lnGamma(n/2 + 1) - lnGamma(n + 1).
absl::StatusOr<double> L1L2VolumeLogRatio(std::int64_t n);

}  // namespace plrvo

#endif  // PLRVO_DISTORTION_H_
