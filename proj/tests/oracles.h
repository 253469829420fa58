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

// Test-only reference implementations. They share no code with the library:
// sums are evaluated directly in linear space at 50 significant digits, and
// Monte-Carlo estimates sample the mechanisms rather than their moments.

#ifndef PLRVO_TESTS_ORACLES_H_
#define PLRVO_TESTS_ORACLES_H_

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>

#include "boost/multiprecision/cpp_bin_float.hpp"
#include "boost/multiprecision/cpp_int.hpp"

namespace plrvo::oracle {

using Real = boost::multiprecision::cpp_bin_float_50;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt ExactBinomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  BigInt result = 1;
  for (int i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

inline Real Pow(const Real& base, int exponent) {
  Real out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

// E over the Gamma seed of the eta-th likelihood-ratio moment at shift x.
inline Real GammaG(double k, double theta, const Real& x, int eta) {
  const Real e = eta;
  const Real t = theta;
  return e / (2 * e - 1) * pow(1 - (e - 1) * x * t, Real(-k)) +
         (e - 1) / (2 * e - 1) * pow(1 + e * x * t, Real(-k));
}

inline Real LaplaceF(double b, const Real& x, int eta) {
  const Real e = eta;
  return (e * exp((e - 1) * x / b) + (e - 1) * exp(-e * x / b)) / (2 * e - 1);
}

template <typename H>
Real SubsampledMoment(double zeta, int lambda, H&& h) {
  const Real z = zeta;
  Real sum = 0;
  for (int eta = 0; eta <= lambda + 1; ++eta) {
    const Real weight = Real(ExactBinomial(lambda + 1, eta)) *
                        Pow(1 - z, lambda + 1 - eta) * Pow(z, eta);
    if (weight == 0) continue;
    sum += weight * h(eta);
  }
  return sum;
}

inline double PlrvLogMoment(double k, double theta, double x, double zeta,
                            int lambda) {
  return static_cast<double>(log(SubsampledMoment(
      zeta, lambda, [&](int eta) { return GammaG(k, theta, Real(x), eta); })));
}

inline double LaplaceLogMoment(double b, double x, double zeta, int lambda) {
  return static_cast<double>(log(SubsampledMoment(
      zeta, lambda, [&](int eta) { return LaplaceF(b, Real(x), eta); })));
}

inline double GaussianLogMoment(double sigma, double zeta, int lambda) {
  return static_cast<double>(log(SubsampledMoment(zeta, lambda, [&](int eta) {
    const Real e = eta;
    return exp((e * e - e) / (2 * Real(sigma) * Real(sigma)));
  })));
}

// Majorization coordinate at 50 digits.
inline Real Coordinate(double clip, std::int64_t i) {
  return Real(clip) * (sqrt(Real(i)) - sqrt(Real(i - 1)));
}

// Direct sum over every coordinate, no streaming or log-space tricks.
inline double NaivePlrvMultivariate(double k, double theta, double zeta,
                                    std::int64_t n, double clip, int lambda) {
  Real total = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    const Real x = Coordinate(clip, i);
    total += log(SubsampledMoment(
        zeta, lambda, [&](int eta) { return GammaG(k, theta, x, eta); }));
  }
  return static_cast<double>(total);
}

inline double NaiveLaplaceMultivariate(double b, double zeta, std::int64_t n,
                                       double clip, int lambda) {
  Real total = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    const Real x = Coordinate(clip, i);
    total += log(SubsampledMoment(
        zeta, lambda, [&](int eta) { return LaplaceF(b, x, eta); }));
  }
  return static_cast<double>(total);
}

// Exhaustive minimization of the conversion over every grid point, in long
// double, returning (epsilon, argmin).
inline std::pair<double, int> BruteForceEpsilon(
    const std::map<int, double>& alpha, double delta) {
  long double best = INFINITY;
  int arg = 0;
  for (const auto& [lambda, a] : alpha) {
    const long double l = lambda;
    const long double eps = a / l + std::log(l / (l + 1)) -
                            (std::log(static_cast<long double>(delta)) +
                             std::log(l + 1)) / l;
    if (eps < best) {
      best = eps;
      arg = lambda;
    }
  }
  return {static_cast<double>(best), arg};
}

// Closed-form k bounds at 50 digits, in the printed form.
inline std::pair<double, double> KBounds(double clip, double theta, int eta) {
  const Real c = clip, t = theta, e = eta;
  const Real log_term = log(c * t - c * e * t + 1);
  const Real quad = c * c * t * t * (e - e * e);
  const Real disc = 16 * log_term * log_term + Real(11.09375) * quad;
  const Real root = sqrt(disc);
  Real k1 = (4 * log(1 - c * t * (e - 1)) - root) / (2 * quad);
  Real k2 = (4 * log(1 - c * t * (e - 1)) + root) / (2 * quad);
  if (k1 > k2) std::swap(k1, k2);
  return {static_cast<double>(k1), static_cast<double>(k2)};
}

// Residual of a k^2 + b k + c at k, with a = C^2 theta^2 (eta - eta^2),
// b = -4 log(1 - C theta (eta - 1)), c = -2.7734375 (so b^2 - 4ac equals the
// printed discriminant), relative to the largest term.
inline double KBoundsResidual(double clip, double theta, int eta, double k) {
  const Real c = clip, t = theta, e = eta, kk = k;
  const Real a = c * c * t * t * (e - e * e);
  const Real b = -4 * log(1 - c * t * (e - 1));
  const Real c0 = Real(-2.7734375);
  const Real terms[] = {abs(a * kk * kk), abs(b * kk), abs(c0)};
  Real scale = 0;
  for (const Real& term : terms) scale = std::max(scale, term);
  return static_cast<double>(abs(a * kk * kk + b * kk + c0) / scale);
}

// Monte-Carlo estimate of E_{y ~ mu0}[((1 - zeta) + zeta mu1(y)/mu0(y))^n]
// conditional on the drawn scale, averaged over scales; returns the sample
// mean and its standard error.
struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

template <typename ScaleFn>
McEstimate SubsampledRatioMoment(double x, double zeta, int order,
                                 std::int64_t draws, std::uint64_t seed,
                                 ScaleFn&& draw_scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);
  double mean = 0.0, m2 = 0.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const double b = draw_scale(rng);
    const double v = uniform(rng);
    const double y = (v < 0 ? 1.0 : -1.0) * b * std::log1p(-2.0 * std::fabs(v));
    const double ratio = std::exp((std::fabs(y) - std::fabs(y - x)) / b);
    const double value = std::pow((1.0 - zeta) + zeta * ratio, order);
    const double delta = value - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (value - mean);
  }
  const double variance = m2 / static_cast<double>(draws - 1);
  return {mean, std::sqrt(variance / static_cast<double>(draws))};
}

}  // namespace plrvo::oracle

#endif  // PLRVO_TESTS_ORACLES_H_
