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

#ifndef PLRVO_SAMPLER_H_
#define PLRVO_SAMPLER_H_

#include <cmath>
#include <cstdint>

#include "Eigen/Core"
#include "plrvo/params.h"
#include "plrvo/random.h"

namespace plrvo {

// One noise vector: the realized Laplace scale b = 1/u and n coordinates
// sharing it.
struct NoiseDraw {
  double scale_b = 0.0;
  Eigen::VectorXd coords;
};

// Standard normal by the polar method; the second variate is discarded.
template <typename Rng>
double SampleStandardNormal(Rng& rng) {
  while (true) {
    const double u = 2.0 * UniformOpen01(rng) - 1.0;
    const double v = 2.0 * UniformOpen01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s < 1.0 && s > 0.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

// Gamma(shape k, scale theta). Marsaglia-Tsang squeeze for k >= 1; for
// k < 1, G(k + 1) * U^(1/k) evaluated in log space.
template <typename Rng>
double SampleGamma(double k, double theta, Rng& rng) {
  if (k < 1.0) {
    const double g = SampleGamma(k + 1.0, 1.0, rng);
    const double log_u = std::log(UniformOpen01(rng));
    return theta * std::exp(std::log(g) + log_u / k);
  }
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x, v;
    do {
      x = SampleStandardNormal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = UniformOpen01(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return theta * d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return theta * d * v;
    }
  }
}

// Laplace(0, b) by inversion: -b sign(v) ln(1 - 2|v|), v uniform on
// (-1/2, 1/2).
template <typename Rng>
double SampleLaplace(double b, Rng& rng) {
  const double v = UniformOpen01(rng) - 0.5;
  const double magnitude = -b * std::log1p(-2.0 * std::fabs(v));
  return v < 0.0 ? -magnitude : magnitude;
}

// u ~ Gamma(k, theta), b = 1/u, then n i.i.d. Laplace(0, b) coordinates.
template <typename Rng>
NoiseDraw SamplePlrvNoise(const GammaPlrvParams& params, std::int64_t n,
                          Rng& rng) {
  NoiseDraw draw;
  draw.scale_b = 1.0 / SampleGamma(params.k(), params.theta(), rng);
  draw.coords.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    draw.coords[i] = SampleLaplace(draw.scale_b, rng);
  }
  return draw;
}

// n i.i.d. Laplace(0, b) coordinates with a fixed scale.
template <typename Rng>
NoiseDraw SampleLaplaceNoise(double b, std::int64_t n, Rng& rng) {
  NoiseDraw draw;
  draw.scale_b = b;
  draw.coords.resize(n);
  for (std::int64_t i = 0; i < n; ++i) draw.coords[i] = SampleLaplace(b, rng);
  return draw;
}

// n i.i.d. N(0, sigma_eff^2) coordinates; both polar variates are used.
template <typename Rng>
Eigen::VectorXd SampleGaussianNoise(double sigma_eff, std::int64_t n,
                                    Rng& rng) {
  Eigen::VectorXd z(n);
  std::int64_t i = 0;
  while (i < n) {
    const double u = 2.0 * UniformOpen01(rng) - 1.0;
    const double v = 2.0 * UniformOpen01(rng) - 1.0;
    const double s = u * u + v * v;
    if (!(s < 1.0 && s > 0.0)) continue;
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    z[i++] = sigma_eff * u * f;
    if (i < n) z[i++] = sigma_eff * v * f;
  }
  return z;
}

}  // namespace plrvo

#endif  // PLRVO_SAMPLER_H_
