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

#ifndef PLRVO_NUMERICS_H_
#define PLRVO_NUMERICS_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <span>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace plrvo {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// A non-negative quantity held as its natural logarithm. kLogZero encodes an
// exact zero; NaN is rejected at construction.
class LogValue {
 public:
  static absl::StatusOr<LogValue> FromLog(double log_value);
  static LogValue Zero() { return LogValue(kLogZero); }
  static LogValue One() { return LogValue(0.0); }

  double log() const { return log_; }
  bool is_zero() const { return log_ == kLogZero; }

  LogValue operator*(LogValue other) const { return LogValue(log_ + other.log_); }
  LogValue operator+(LogValue other) const;

 private:
  explicit LogValue(double log_value) : log_(log_value) {}
  double log_;
};

// ln Gamma(x) for x > 0.
absl::StatusOr<double> LogGamma(double x);

// ln C(n, r).
absl::StatusOr<double> LogBinomial(std::int64_t n, std::int64_t r);

// ln sum_i exp(terms[i]). Returns kLogZero when every term is kLogZero. The
// sequence must be non-empty.
double LogSumExp(std::span<const double> terms);

// P(k, x) = gamma(k, x) / Gamma(k).
absl::StatusOr<double> RegularizedLowerGamma(double k, double x);

// Integral of f over [lower, inf) for non-negative, decreasing f. Geometric
// panels [a, 2a + 1] are integrated adaptively until one contributes less
// than 1e-12 of the running total. Fails with kNonConvergence when the
// integrand does not decay fast enough (e.g. a (1 + z)^-1 tail).
absl::StatusOr<double> IntegrateDecaying(const std::function<double(double)>& f,
                                         double lower);

namespace internal {

// Unchecked variants for inner loops whose callers have validated arguments.
double LogGammaUnchecked(double x);
double LogBinomialUnchecked(std::int64_t n, std::int64_t r);
double LogSumExpPair(double a, double b);

// count * log_value with 0 * (-inf) == 0, as needed for binomial weights at
// sampling rates 0 and 1.
inline double ScaledLog(double count, double log_value) {
  return count == 0.0 ? 0.0 : count * log_value;
}

}  // namespace internal
}  // namespace plrvo

#endif  // PLRVO_NUMERICS_H_
