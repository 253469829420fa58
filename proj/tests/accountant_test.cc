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

#include "plrvo/accountant.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "Eigen/Core"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "plrvo/majorization.h"
#include "plrvo/status.h"

namespace plrvo {
namespace {

using ::testing::DoubleNear;

GammaPlrvParams Plrv(double k, double theta) {
  return *GammaPlrvParams::Create(k, theta);
}

std::vector<int> Range(int lo, int hi) {
  std::vector<int> out(hi - lo + 1);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

LogMomentCurve Curve(std::map<int, double> alpha) {
  return *LogMomentCurve::Create(CurveMetadata{"test", {}, std::nullopt, 1},
                                 std::move(alpha));
}

void ExpectRelNear(double got, double want, double rel) {
  EXPECT_LE(std::fabs(got - want), rel * std::max(std::fabs(want), 1e-300))
      << "got " << got << " want " << want;
}

TEST(GammaMgfLogTest, Examples) {
  EXPECT_EQ(*GammaMgfLog(Plrv(3.0, 0.2), 0.0), 0.0);
  EXPECT_NEAR(*GammaMgfLog(Plrv(2.0, 0.5), -2.0), -2.0 * std::log(2.0), 1e-15);
  const absl::StatusOr<double> bad = GammaMgfLog(Plrv(2.0, 0.5), 2.0);
  EXPECT_EQ(GetErrorKind(bad.status()), ErrorKind::kMgfDomainViolation);
}

TEST(GammaMgfLogTest, MonteCarloMgf) {
  std::mt19937_64 rng(5);
  std::gamma_distribution<double> gamma(10.0, 0.01);
  const int n = 1000000;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = std::exp(5.0 * gamma(rng));
    const double d = v - mean;
    mean += d / (i + 1);
    m2 += d * (v - mean);
  }
  const double se = std::sqrt(m2 / (n - 1) / n);
  EXPECT_NEAR(std::exp(*GammaMgfLog(Plrv(10.0, 0.01), 5.0)), mean, 3 * se);
}

TEST(PlrvGTermTest, DegenerateOrdersAreOne) {
  EXPECT_EQ(*PlrvGTerm(Plrv(10.0, 0.01), 1.0, 0), 1.0);
  EXPECT_EQ(*PlrvGTerm(Plrv(10.0, 0.01), 1.0, 1), 1.0);
}

TEST(PlrvGTermTest, MatchesExtendedPrecision) {
  const double want = static_cast<double>(
      oracle::GammaG(10.0, 0.01, oracle::Real(1.0), 2));
  EXPECT_NEAR(want, 1.0106, 1e-4);
  ExpectRelNear(*PlrvGTerm(Plrv(10.0, 0.01), 1.0, 2), want, 1e-13);
  EXPECT_EQ(GetErrorKind(PlrvGTerm(Plrv(10.0, 0.5), 1.0, 4).status()),
            ErrorKind::kMgfDomainViolation);
}

TEST(UnivariateTest, TrivialLimits) {
  EXPECT_EQ(*PlrvUnivariateLogMoment(Plrv(10.0, 0.01), 1.0, 0.0, 7), 0.0);
  EXPECT_EQ(*PlrvUnivariateLogMoment(Plrv(10.0, 0.01), 0.0, 0.3, 7), 0.0);
  const LaplaceParams lap = *LaplaceParams::Create(1.0);
  EXPECT_EQ(*LaplaceUnivariateLogMoment(lap, 1.0, 0.0, 7), 0.0);
  EXPECT_EQ(*LaplaceUnivariateLogMoment(lap, 0.0, 0.4, 7), 0.0);
}

TEST(UnivariateTest, MatchesExtendedPrecisionOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u;
  for (int trial = 0; trial < 100; ++trial) {
    const double k = 1.0 + 500.0 * u(rng);
    const double x = 0.05 + 5.0 * u(rng);
    const int lambda = 1 + static_cast<int>(40 * u(rng));
    const double theta = 0.9 * u(rng) / (x * lambda);
    const double zeta = u(rng);
    const double want = oracle::PlrvLogMoment(k, theta, x, zeta, lambda);
    const double got = *PlrvUnivariateLogMoment(Plrv(k, theta), x, zeta, lambda);
    EXPECT_LE(std::fabs(got - want), 1e-12 * std::max(1.0, std::fabs(want)))
        << "k=" << k << " theta=" << theta << " x=" << x << " zeta=" << zeta
        << " lambda=" << lambda;

    const double b = 0.2 + 5.0 * u(rng);
    EXPECT_LE(std::fabs(*LaplaceUnivariateLogMoment(*LaplaceParams::Create(b),
                                                     x, zeta, lambda) -
                        oracle::LaplaceLogMoment(b, x, zeta, lambda)),
              1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST(UnivariateTest, RejectsDomainViolation) {
  const absl::StatusOr<double> r =
      PlrvUnivariateLogMoment(Plrv(10.0, 0.1), 2.0, 0.5, 5);
  EXPECT_EQ(GetErrorKind(r.status()), ErrorKind::kMgfDomainViolation);
  EXPECT_FALSE(PlrvUnivariateLogMoment(Plrv(10.0, 0.01), 1.0, 1.5, 2).ok());
  EXPECT_FALSE(PlrvUnivariateLogMoment(Plrv(10.0, 0.01), 1.0, 0.5, 0).ok());
}

// ln E[(mu/mu0)^(lambda+1)] by sampling the scale and the noise.
TEST(UnivariateTest, MonteCarloLikelihoodRatio) {
  const double k = 10.0, theta = 0.01, x = 1.0, zeta = 0.5;
  const int lambda = 1;
  std::gamma_distribution<double> gamma(k, theta);
  const oracle::McEstimate mc = oracle::SubsampledRatioMoment(
      x, zeta, lambda + 1, 10000000, 23,
      [&](std::mt19937_64& rng) { return 1.0 / gamma(rng); });
  const double alpha =
      *PlrvUnivariateLogMoment(Plrv(k, theta), x, zeta, lambda);
  EXPECT_LE(std::fabs(std::log(mc.mean) - alpha), 0.02 * alpha);
  EXPECT_NEAR(std::exp(alpha), mc.mean, 3 * mc.standard_error);
}

TEST(UnivariateTest, MonteCarloLaplace) {
  const oracle::McEstimate mc = oracle::SubsampledRatioMoment(
      1.0, 0.3, 3, 10000000, 29, [](std::mt19937_64&) { return 1.0; });
  const double alpha =
      *LaplaceUnivariateLogMoment(*LaplaceParams::Create(1.0), 1.0, 0.3, 2);
  EXPECT_LE(std::fabs(std::log(mc.mean) - alpha), 0.02 * alpha);
  EXPECT_NEAR(std::exp(alpha), mc.mean, 3 * mc.standard_error);
}

TEST(GaussianTest, Examples) {
  const GaussianParams unit = *GaussianParams::Create(1.0);
  EXPECT_EQ(*GaussianSubsampledLogMoment(unit, 0.0, 10), 0.0);
  EXPECT_LE(*GaussianSubsampledLogMoment(*GaussianParams::Create(1e9), 0.3, 10),
            1e-12);
  ExpectRelNear(*GaussianSubsampledLogMoment(unit, 0.01, 2),
                oracle::GaussianLogMoment(1.0, 0.01, 2), 1e-12);
  for (int lambda : {1, 5, 32, 64}) {
    for (double sigma : {0.7, 1.3, 4.0}) {
      ExpectRelNear(
          *GaussianSubsampledLogMoment(*GaussianParams::Create(sigma), 0.05,
                                       lambda),
          oracle::GaussianLogMoment(sigma, 0.05, lambda), 1e-12);
    }
  }
}

TEST(MultivariateTest, SingleCoordinateIsUnivariate) {
  const GammaPlrvParams p = Plrv(20.0, 0.005);
  const int lambdas[] = {3};
  const MultivariateResult r =
      *PlrvMultivariateLogMoments(p, 0.2, 1, 2.0, lambdas);
  EXPECT_EQ(r.log_moments[0], *PlrvUnivariateLogMoment(p, 2.0, 0.2, 3));
  const LaplaceParams lap = *LaplaceParams::Create(2.0);
  EXPECT_EQ((*LaplaceMultivariateLogMoments(lap, 0.2, 1, 2.0, lambdas))
                .log_moments[0],
            *LaplaceUnivariateLogMoment(lap, 2.0, 0.2, 3));
}

TEST(MultivariateTest, MatchesNaiveSum) {
  for (std::int64_t n : {1, 2, 3, 7, 16}) {
    for (int lambda : {1, 4, 9}) {
      const int lambdas[] = {lambda};
      const double plrv =
          (*PlrvMultivariateLogMoments(Plrv(30.0, 0.004), 0.1, n, 2.0, lambdas))
              .log_moments[0];
      ExpectRelNear(plrv,
                    oracle::NaivePlrvMultivariate(30.0, 0.004, 0.1, n, 2.0,
                                                  lambda),
                    1e-10);
      const double lap = (*LaplaceMultivariateLogMoments(
                              *LaplaceParams::Create(1.5), 0.1, n, 2.0, lambdas))
                             .log_moments[0];
      ExpectRelNear(lap, oracle::NaiveLaplaceMultivariate(1.5, 0.1, n, 2.0, lambda),
                    1e-10);
    }
  }
}

TEST(MultivariateTest, JobConvenienceValidates) {
  const GammaPlrvParams p = Plrv(141.06, 8.32e-4);
  const AccountingJob job =
      *AccountingJob::Create(250, 0.01024, 3, 10.0, 2e-5, 121);
  EXPECT_EQ(GetErrorKind(PlrvMultivariateLogMoment(p, job, 4).status()),
            ErrorKind::kMgfDomainViolation);
  const AccountingJob good = *job.WithLambdaMax(119);
  EXPECT_NEAR(*PlrvMultivariateLogMoment(p, good, 4),
              oracle::NaivePlrvMultivariate(141.06, 8.32e-4, 0.01024, 3, 10.0, 4),
              1e-12);
  EXPECT_FALSE(PlrvMultivariateLogMoment(p, good, 120).ok());
}

TEST(MultivariateTest, ZeroSamplingOrClipVanishes) {
  const std::vector<int> lambdas = Range(1, 20);
  for (const auto& r :
       {*PlrvMultivariateLogMoments(Plrv(10.0, 0.01), 0.0, 50, 1.0, lambdas),
        *PlrvMultivariateLogMoments(Plrv(10.0, 0.01), 0.3, 50, 0.0, lambdas),
        *LaplaceMultivariateLogMoments(*LaplaceParams::Create(1.0), 0.0, 50,
                                       1.0, lambdas)}) {
    for (double a : r.log_moments) EXPECT_EQ(a, 0.0);
  }
}

TEST(MultivariateTest, ThreadCountInvariance) {
  const std::vector<int> lambdas = Range(1, 12);
  const MultivariateResult one = *PlrvMultivariateLogMoments(
      Plrv(50.0, 0.002), 0.05, 50000, 3.0, lambdas, SumMode::kExact, {1});
  for (int threads : {2, 3, 0}) {
    const MultivariateResult many = *PlrvMultivariateLogMoments(
        Plrv(50.0, 0.002), 0.05, 50000, 3.0, lambdas, SumMode::kExact,
        {threads});
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      EXPECT_EQ(std::memcmp(&one.log_moments[i], &many.log_moments[i],
                            sizeof(double)),
                0)
          << "threads=" << threads;
    }
  }
}

TEST(MultivariateTest, AcceleratedTracksExact) {
  const std::vector<int> lambdas = {2, 8, 20};
  for (std::int64_t n : {500, 5000, 200000}) {
    const MultivariateResult exact = *PlrvMultivariateLogMoments(
        Plrv(141.06, 8.32e-4), 0.01024, n, 10.0, lambdas, SumMode::kExact);
    const MultivariateResult fast = *PlrvMultivariateLogMoments(
        Plrv(141.06, 8.32e-4), 0.01024, n, 10.0, lambdas, SumMode::kAccelerated);
    ASSERT_TRUE(fast.error_estimate.has_value());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      EXPECT_LE(std::fabs(fast.log_moments[i] - exact.log_moments[i]),
                1e-4 * exact.log_moments[i])
          << "n=" << n << " lambda=" << lambdas[i];
    }
  }
}

TEST(MultivariateTest, MajorizedBoundDominatesBallVectors) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> u;
  const GammaPlrvParams p = Plrv(40.0, 0.003);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 64;
    const double clip = 2.0;
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = normal(rng);
    g *= clip * std::pow(u(rng), 1.0 / n) / g.norm();
    const int lambdas[] = {6};
    double direct = 0.0;
    for (int i = 0; i < n; ++i) {
      direct += *PlrvUnivariateLogMoment(p, std::fabs(g[i]), 0.1, 6);
    }
    const double bound =
        (*PlrvMultivariateLogMoments(p, 0.1, n, clip, lambdas)).log_moments[0];
    EXPECT_LE(direct, bound * (1 + 1e-12));
  }
}

TEST(PropertyTest, MonotoneInLambdaZetaAndClip) {
  const GammaPlrvParams p = Plrv(25.0, 0.002);
  const std::vector<int> lambdas = Range(1, 40);
  std::vector<double> previous_zeta(lambdas.size(), 0.0);
  for (double zeta : {0.0, 0.01, 0.1, 0.5, 1.0}) {
    const MultivariateResult r =
        *PlrvMultivariateLogMoments(p, zeta, 40, 5.0, lambdas);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      if (i > 0) EXPECT_GE(r.log_moments[i], r.log_moments[i - 1] - 1e-10);
      EXPECT_GE(r.log_moments[i], previous_zeta[i] - 1e-10);
    }
    previous_zeta = r.log_moments;
  }
  std::vector<double> previous_clip(lambdas.size(), 0.0);
  for (double clip : {0.0, 0.5, 1.0, 3.0, 6.0}) {
    const MultivariateResult r =
        *PlrvMultivariateLogMoments(p, 0.2, 40, clip, lambdas);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      EXPECT_GE(r.log_moments[i], previous_clip[i] - 1e-10);
    }
    previous_clip = r.log_moments;
  }
}

TEST(PropertyTest, PerCoordinateMomentIsIncreasingAndConvex) {
  const double h = 1e-3;
  for (auto [k, theta, zeta, lambda] :
       {std::tuple{10.0, 0.01, 0.5, 3}, std::tuple{141.06, 8.32e-4, 0.01024, 20},
        std::tuple{2.5, 0.05, 0.9, 2}}) {
    const double x_max = 0.9 / (theta * lambda);
    for (int i = 1; i <= 50; ++i) {
      const double x = x_max * i / 51.0;
      auto f = [&](double v) {
        return *PlrvUnivariateLogMoment(Plrv(k, theta), v, zeta, lambda);
      };
      const double step = h * x_max;
      const double first = (f(x + step) - f(x - step)) / (2 * step);
      const double second =
          (f(x + step) - 2 * f(x) + f(x - step)) / (step * step);
      EXPECT_GE(first, -1e-8) << "x=" << x;
      EXPECT_GE(second, -1e-6) << "x=" << x;
    }
  }
}

TEST(CurveTest, CreateChecksInvariants) {
  EXPECT_FALSE(LogMomentCurve::Create({}, {}).ok());
  EXPECT_FALSE(LogMomentCurve::Create({}, {{1, -0.1}}).ok());
  EXPECT_FALSE(LogMomentCurve::Create({}, {{1, 0.5}, {2, 0.4}}).ok());
  EXPECT_FALSE(LogMomentCurve::Create({}, {{0, 0.5}}).ok());
  EXPECT_TRUE(LogMomentCurve::Create({}, {{1, 0.5}, {2, 0.5 - 1e-12}}).ok());
}

TEST(ComposeTest, LinearAndAssociative) {
  const LogMomentCurve c = Curve({{1, 0.004}, {2, 0.01}, {3, 0.03}});
  const LogMomentCurve once = *Compose(c, 1);
  EXPECT_EQ(once.alpha(), c.alpha());
  EXPECT_NEAR((*Compose(c, 250)).alpha().at(1), 1.0, 1e-15);
  const LogMomentCurve six = *Compose(c, 6);
  const LogMomentCurve two_three = *Compose(*Compose(c, 2), 3);
  for (const auto& [l, a] : six.alpha()) {
    EXPECT_NEAR(two_three.alpha().at(l), a, 1e-15);
  }
  EXPECT_EQ(two_three.metadata().composed_steps, 6);
  EXPECT_FALSE(Compose(c, 0).ok());
}

TEST(ConversionTest, ZeroCurveAttainsAtLargestOrder) {
  std::map<int, double> zero;
  for (int l = 1; l <= 64; ++l) zero[l] = 0.0;
  const EpsilonResult r = *EpsilonFromDelta(Curve(zero), 1e-5);
  const auto [eps, arg] = oracle::BruteForceEpsilon(zero, 1e-5);
  EXPECT_EQ(r.argmin_lambda, 64);
  EXPECT_EQ(arg, 64);
  EXPECT_NEAR(r.epsilon, eps, 1e-12);
  EXPECT_NEAR(*DeltaFromEpsilon(Curve(zero), 1.0), std::exp(-64.0), 1e-40);
  EXPECT_EQ(*DeltaFromEpsilon(Curve(zero), 0.0), 1.0);
}

TEST(ConversionTest, TiesGoToSmallerOrder) {
  // Pick alpha so that orders 2 and 3 give exactly the same value.
  const double log_delta = std::log(1e-3);
  auto offset = [&](int l) {
    return std::log(l / (l + 1.0)) - (log_delta + std::log(l + 1.0)) / l;
  };
  const double target = 5.0;
  std::map<int, double> alpha = {{2, 2 * (target - offset(2))},
                                 {3, 3 * (target - offset(3))}};
  const LogMomentCurve c = Curve(alpha);
  const EpsilonResult r = *EpsilonFromDelta(c, 1e-3);
  EXPECT_EQ(r.argmin_lambda, 2);
}

TEST(ConversionTest, MonotoneInDeltaAndSteps) {
  const LogMomentCurve c = *PerStepCurve(
      Plrv(30.0, 0.003), *AccountingJob::Create(100, 0.05, 20, 2.0, 1e-5, 64),
      Range(1, 64));
  double previous = std::numeric_limits<double>::infinity();
  for (double delta : {1e-9, 1e-7, 1e-5, 1e-3, 0.1}) {
    const double eps = EpsilonFromDelta(*Compose(c, 100), delta)->epsilon;
    EXPECT_LE(eps, previous);
    previous = eps;
  }
  for (std::int64_t t : {1, 10, 100, 1000}) {
    EXPECT_GE(EpsilonFromDelta(*Compose(c, 2 * t), 1e-5)->epsilon,
              EpsilonFromDelta(*Compose(c, t), 1e-5)->epsilon);
  }
}

// The tail bound is looser than the conversion used for epsilon, so the
// round trip can only overshoot delta, by at most max (l + 1)(1 + 1/l)^l.
TEST(ConversionTest, RoundTripBracketsDelta) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u;
  for (int trial = 0; trial < 50; ++trial) {
    std::map<int, double> alpha;
    double a = 0.0;
    const int lambda_max = 2 + trial * 3;
    for (int l = 1; l <= lambda_max; ++l) {
      a += 0.01 * u(rng) * l;
      alpha[l] = a;
    }
    const LogMomentCurve c = Curve(alpha);
    const double delta = std::pow(10.0, -2.0 - 8.0 * u(rng));
    const EpsilonResult eps = *EpsilonFromDelta(c, delta);
    const double back = *DeltaFromEpsilon(c, eps.epsilon);
    const double l = lambda_max;
    EXPECT_GE(back, delta * (1 - 1e-9));
    EXPECT_LE(back, std::min(1.0, delta * (l + 1) * std::pow(1 + 1 / l, l)) *
                        (1 + 1e-9));
  }
}

TEST(ConversionTest, MatchesExhaustiveAndCoarseToFine) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u;
  for (int trial = 0; trial < 50; ++trial) {
    // Convex-ish curves like real composed moments: a l^2 + b l.
    std::map<int, double> alpha;
    const double quad = std::pow(10.0, -4.0 + 3.0 * u(rng));
    const double lin = std::pow(10.0, -3.0 + 2.0 * u(rng));
    const int lambda_max = 16 + static_cast<int>(1000 * u(rng));
    for (int l = 1; l <= lambda_max; ++l) alpha[l] = quad * l * l + lin * l;
    const LogMomentCurve c = Curve(alpha);
    const double delta = 1e-5;
    const EpsilonResult full = *EpsilonFromDelta(c, delta);
    const auto [eps, arg] = oracle::BruteForceEpsilon(alpha, delta);
    EXPECT_NEAR(full.epsilon, eps, 1e-12 * std::max(1.0, eps));
    EXPECT_EQ(full.argmin_lambda, arg);
    const EpsilonResult coarse = *EpsilonFromDeltaCoarseToFine(c, delta);
    EXPECT_LE(std::fabs(coarse.epsilon - full.epsilon), 0.005 * full.epsilon);
    EXPECT_GE(coarse.epsilon, full.epsilon);
  }
}

TEST(LambdaGridTest, CoarseAndFine) {
  EXPECT_THAT(CoarseLambdaGrid(1), ::testing::ElementsAre(1));
  EXPECT_THAT(CoarseLambdaGrid(8), ::testing::ElementsAre(1, 2, 4, 8));
  EXPECT_THAT(CoarseLambdaGrid(119),
              ::testing::ElementsAre(1, 2, 4, 8, 16, 32, 64, 119));
  EXPECT_THAT(FineLambdaGrid(8, 119), ::testing::ElementsAre(4, 5, 6, 7, 8, 9,
                                                             10, 11, 12, 13, 14,
                                                             15, 16));
  EXPECT_THAT(FineLambdaGrid(1, 119), ::testing::ElementsAre(1, 2));
  EXPECT_THAT(FineLambdaGrid(119, 119).back(), 119);
}

TEST(LaplaceBoundTest, Examples) {
  EXPECT_EQ(LaplacePrivacyLossBound(*LaplaceParams::Create(3.0), 3.0), 1.0);
  EXPECT_EQ(LaplacePrivacyLossBound(*LaplaceParams::Create(3.0), 0.0), 0.0);
  EXPECT_EQ(LaplacePrivacyLossBound(*LaplaceParams::Create(0.5), 2.0), 4.0);
}

TEST(AccountTest, SmallJobMatchesOracle) {
  const AccountingJob job = *AccountingJob::Create(50, 0.1, 3, 1.0, 1e-5, 30);
  std::map<int, double> composed;
  for (int l = 1; l <= 30; ++l) {
    composed[l] =
        50 * oracle::NaivePlrvMultivariate(40.0, 0.005, 0.1, 3, 1.0, l);
  }
  const auto [eps, arg] = oracle::BruteForceEpsilon(composed, 1e-5);
  const AccountResult r = *Account(Plrv(40.0, 0.005), job);
  EXPECT_NEAR(r.epsilon, eps, 1e-10 * eps);
  EXPECT_EQ(r.argmin_lambda, arg);
  EXPECT_EQ(r.per_step_curve.alpha().size(), 30u);
  const AccountResult coarse = *Account(
      Plrv(40.0, 0.005), job, {SumMode::kExact, LambdaSearch::kCoarseToFine, {}});
  EXPECT_LE(std::fabs(coarse.epsilon - eps), 0.005 * eps);
}

TEST(AccountTest, ZeroSamplingGivesConversionFloor) {
  const AccountingJob job = *AccountingJob::Create(100, 0.0, 10, 1.0, 1e-5, 64);
  std::map<int, double> zero;
  for (int l = 1; l <= 64; ++l) zero[l] = 0.0;
  const double floor = oracle::BruteForceEpsilon(zero, 1e-5).first;
  for (const Mechanism& m :
       {Mechanism(Plrv(10.0, 0.01)), Mechanism(*GaussianParams::Create(1.0)),
        Mechanism(*LaplaceParams::Create(1.0))}) {
    EXPECT_NEAR(Account(m, job)->epsilon, floor, 1e-12);
  }
}

TEST(AccountTest, MgfViolationCarriesCap) {
  const AccountingJob job =
      *AccountingJob::Create(250, 0.01024, 10, 10.0, 2e-5, 121);
  const absl::Status s = Account(Plrv(141.06, 8.32e-4), job).status();
  EXPECT_EQ(GetErrorKind(s), ErrorKind::kMgfDomainViolation);
  EXPECT_EQ(GetMaxAdmissibleLambda(s), 119);
}

}  // namespace
}  // namespace plrvo
