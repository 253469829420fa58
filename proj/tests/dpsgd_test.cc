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

#include "plrvo/dpsgd.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "plrvo/accountant.h"
#include "plrvo/distortion.h"
#include "plrvo/optimizer.h"
#include "plrvo/random.h"

namespace plrvo {
namespace {

double LogisticLoss(const Eigen::VectorXd& w, const Dataset& data) {
  double loss = 0.0;
  for (std::int64_t i = 0; i < data.size(); ++i) {
    const double margin = data.features.row(i).dot(w);
    const double y = data.labels[i];
    // log(1 + e^m) - y m, stable for both signs.
    loss += std::max(margin, 0.0) + std::log1p(std::exp(-std::fabs(margin))) -
            y * margin;
  }
  return loss / static_cast<double>(data.size());
}

bool BitwiseEqual(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

TEST(PoissonSubsampleTest, FullAndEmpty) {
  Xoshiro256 rng(1);
  const std::vector<std::int64_t> all = PoissonSubsample(100, 1.0, rng);
  ASSERT_EQ(all.size(), 100u);
  for (std::int64_t i = 0; i < 100; ++i) EXPECT_EQ(all[i], i);
  EXPECT_TRUE(PoissonSubsample(100, 0.0, rng).empty());
}

TEST(PoissonSubsampleTest, BinomialMean) {
  Xoshiro256 rng(2);
  const int trials = 100000;
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    total += static_cast<double>(PoissonSubsample(100, 0.5, rng).size());
  }
  EXPECT_NEAR(total / trials, 50.0, 4 * std::sqrt(25.0 / trials));
}

TEST(PoissonSubsampleTest, EmptyBatchFrequency) {
  Xoshiro256 rng(3);
  const int trials = 100000;
  int empty = 0;
  for (int t = 0; t < trials; ++t) empty += PoissonSubsample(50, 0.01, rng).empty();
  const double p = std::pow(0.99, 50);
  EXPECT_NEAR(empty, p * trials, 4 * std::sqrt(p * (1 - p) * trials));
}

TEST(L2ClipTest, Examples) {
  const Eigen::VectorXd small = Eigen::Vector3d(0.3, 0.4, 0.0);
  EXPECT_EQ(L2Clip(small, 1.0), small);
  const Eigen::VectorXd big = Eigen::Vector2d(6.0, 8.0);
  const Eigen::VectorXd clipped = L2Clip(big, 5.0);
  EXPECT_NEAR(clipped.norm(), 5.0, 1e-15);
  EXPECT_NEAR(clipped[0] / clipped[1], 0.75, 1e-15);
  EXPECT_EQ(L2Clip(Eigen::VectorXd::Zero(4), 1.0), Eigen::VectorXd::Zero(4));
}

TEST(L2ClipTest, NormBoundOnRandomGradients) {
  const Dataset data = MakeBlobs(500, 8, 3.0, 1, 1);
  Xoshiro256 rng(9);
  Eigen::VectorXd w(8);
  for (int i = 0; i < 8; ++i) w[i] = 5.0 * (UniformOpen01(rng) - 0.5);
  for (std::int64_t i = 0; i < data.size(); ++i) {
    const Eigen::VectorXd g =
        LogisticGradient(w, data.features.row(i).transpose(), data.labels[i]);
    EXPECT_LE(L2Clip(g, 0.1).norm(), 0.1 + 1e-12);
  }
}

TEST(GradientTest, MatchesFiniteDifference) {
  const Eigen::VectorXd x = Eigen::Vector3d(0.5, -1.0, 2.0);
  const Eigen::VectorXd w = Eigen::Vector3d(0.2, 0.1, -0.3);
  Dataset one;
  one.features = x.transpose();
  one.labels = Eigen::VectorXd::Constant(1, 1.0);
  const Eigen::VectorXd g = LogisticGradient(w, x, 1.0);
  for (int j = 0; j < 3; ++j) {
    Eigen::VectorXd hi = w, lo = w;
    hi[j] += 1e-6;
    lo[j] -= 1e-6;
    EXPECT_NEAR(g[j], (LogisticLoss(hi, one) - LogisticLoss(lo, one)) / 2e-6,
                1e-8);
  }
}

TEST(MakeBlobsTest, BalancedAndSeeded) {
  const Dataset a = MakeBlobs(1000, 4, 4.0, 5, 1);
  const Dataset b = MakeBlobs(1000, 4, 4.0, 5, 1);
  const Dataset c = MakeBlobs(1000, 4, 4.0, 5, 2);
  EXPECT_EQ(a.features, b.features);
  EXPECT_NE(a.features, c.features);
  EXPECT_EQ(a.labels.sum(), 500.0);
  double positive_mean = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i) {
    if (a.labels[i] == 1.0) positive_mean += a.features(i, 0) / 500.0;
  }
  EXPECT_NEAR(positive_mean, 2.0, 4 / std::sqrt(500.0));
}

TEST(NoisyStepTest, ZeroNoiseFullBatchDescends) {
  const Dataset data = MakeBlobs(400, 2, 2.0, 3, 1);
  Hyper hyper;
  hyper.learning_rate = 0.05;
  hyper.batch = 400;
  hyper.clip = 1.0;
  Xoshiro256 rng(4);
  std::vector<std::int64_t> all(400);
  for (int i = 0; i < 400; ++i) all[i] = i;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(2);
  double previous = LogisticLoss(w, data);
  for (int step = 0; step < 200; ++step) {
    w = NoisyStep(w, data, all, hyper, ZeroNoise{}, rng, {});
    const double loss = LogisticLoss(w, data);
    EXPECT_LE(loss, previous + 1e-15) << "step " << step;
    previous = loss;
  }
}

TEST(NoisyStepTest, EmptyBatchIsNoiseOnly) {
  const Dataset data = MakeBlobs(10, 3, 2.0, 3, 1);
  Hyper hyper;
  hyper.learning_rate = 0.5;
  const TrainingMechanism mech = *GaussianParams::Create(2.0);
  Xoshiro256 a(6), b(6);
  const Eigen::VectorXd w = Eigen::Vector3d(1.0, 2.0, 3.0);
  const Eigen::VectorXd stepped = NoisyStep(w, data, {}, hyper, mech, a, {});
  const Eigen::VectorXd z = DrawNoise(mech, hyper.clip, 3, b);
  EXPECT_TRUE(BitwiseEqual(stepped, w - hyper.learning_rate * z));
}

TEST(DrawNoiseTest, PlrvDistortionAndGaussianScale) {
  const GammaPlrvParams p = *GammaPlrvParams::Create(10.0, 0.1);
  Xoshiro256 rng(8);
  double sum = 0.0;
  const int steps = 100000, dim = 10;
  for (int t = 0; t < steps; ++t) sum += DrawNoise(p, 7.0, dim, rng).cwiseAbs().sum();
  const double expected = PlrvDistortion(p).per_coordinate_l1;
  EXPECT_NEAR(sum / (steps * dim), expected, 0.05 * expected);

  const GaussianParams g = *GaussianParams::Create(0.5);
  double gsum = 0.0;
  for (int t = 0; t < steps; ++t) gsum += DrawNoise(g, 4.0, dim, rng).cwiseAbs().sum();
  const double n = steps * dim;
  const double sd = 2.0 * std::sqrt(1 - 2 / std::numbers::pi);
  EXPECT_NEAR(gsum / n, GaussianDistortion(g, 4.0), 4 * sd / std::sqrt(n));
  EXPECT_EQ(DrawNoise(ZeroNoise{}, 1.0, 3, rng), Eigen::VectorXd::Zero(3));
}

TEST(ClippedGradientSumTest, ThreadInvariant) {
  const Dataset data = MakeBlobs(3000, 32, 2.0, 7, 1);
  std::vector<std::int64_t> batch;
  for (std::int64_t i = 0; i < data.size(); i += 2) batch.push_back(i);
  const Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(32, -1.0, 1.0);
  const Eigen::VectorXd one = ClippedGradientSum(w, data, batch, 0.5, {1});
  for (int threads : {2, 5, 0}) {
    EXPECT_TRUE(
        BitwiseEqual(one, ClippedGradientSum(w, data, batch, 0.5, {threads})))
        << "threads=" << threads;
  }
  Eigen::VectorXd naive = Eigen::VectorXd::Zero(32);
  for (std::int64_t i : batch) {
    naive += L2Clip(
        LogisticGradient(w, data.features.row(i).transpose(), data.labels[i]),
        0.5);
  }
  EXPECT_LE((naive - one).norm(), 1e-10 * naive.norm());
}

TrainingRun DemoRun(TrainingMechanism mechanism, std::uint64_t seed) {
  TrainingRun run;
  run.train = MakeBlobs(1000, 2, 4.0, seed, 1);
  run.test = MakeBlobs(1000, 2, 4.0, seed, 2);
  run.mechanism = std::move(mechanism);
  run.seed = seed;
  return run;
}

TEST(TrainTest, DeterministicAcrossRunsAndThreads) {
  TrainingRun run = DemoRun(*GammaPlrvParams::Create(500.0, 0.004), 11);
  run.exec.threads = 1;
  const TrainingOutcome a = *Train(run);
  const TrainingOutcome b = *Train(run);
  run.exec.threads = 0;
  const TrainingOutcome c = *Train(run);
  EXPECT_TRUE(BitwiseEqual(a.weights, b.weights));
  EXPECT_TRUE(BitwiseEqual(a.weights, c.weights));
  EXPECT_EQ(a.epsilon_report->epsilon, c.epsilon_report->epsilon);
}

TEST(TrainTest, AccountsForTheLoopActuallyRun) {
  const TrainingOutcome out =
      *Train(DemoRun(*GaussianParams::Create(1.0), 12));
  EXPECT_EQ(out.steps_T, 157);
  EXPECT_DOUBLE_EQ(out.sampling_rate_zeta, 0.032);
  ASSERT_TRUE(out.epsilon_report.has_value());
  ASSERT_TRUE(out.epsilon_report->per_step_curve.metadata().job.has_value());
  const AccountingJob& job = *out.epsilon_report->per_step_curve.metadata().job;
  EXPECT_EQ(job.steps_T(), out.steps_T);
  EXPECT_EQ(job.sampling_rate_zeta(), out.sampling_rate_zeta);
  EXPECT_EQ(job.model_dim_N(), 2);
  EXPECT_EQ(job.clip_C(), 1.0);
  EXPECT_NEAR(out.mean_batch_size, 32.0, 1.0);
  EXPECT_FALSE(Train(DemoRun(ZeroNoise{}, 12))->epsilon_report.has_value());
}

TEST(TrainTest, EpsilonGrowsWithSteps) {
  double previous = 0.0;
  for (int epochs : {1, 2, 4}) {
    TrainingRun run = DemoRun(*GaussianParams::Create(1.0), 13);
    run.hyper.epochs = epochs;
    const double eps = Train(run)->epsilon_report->epsilon;
    EXPECT_GT(eps, previous);
    previous = eps;
  }
}

// Both mechanisms calibrated to epsilon = 2 learn the separable blobs.
TEST(TrainTest, MatchedBudgetBothLearn) {
  const std::int64_t steps = 157;
  const double zeta = 0.032;
  const GaussianParams gaussian =
      *CalibrateGaussian(2.0, 1e-5, steps, zeta, kDefaultLambdaMax);
  FeasibilityConfig cfg;
  cfg.clip_min = cfg.clip_max = 1.0;
  cfg.clip_points = 1;
  cfg.steps_T = steps;
  cfg.sampling_rate_zeta = zeta;
  cfg.model_dim_N = 2;
  cfg.lambda_max = kDefaultLambdaMax;
  cfg.target = *PrivacyTarget::Create(2.0, 1e-5);
  const OptimizationResult solved = *Solve(cfg);
  const GammaPlrvParams plrv =
      *GammaPlrvParams::Create(solved.k_star, solved.theta_star);
  for (std::uint64_t seed : {1, 2, 3}) {
    const TrainingOutcome g = *Train(DemoRun(gaussian, seed));
    const TrainingOutcome p = *Train(DemoRun(plrv, seed));
    EXPECT_GT(g.accuracy, 0.9) << "seed " << seed;
    EXPECT_GT(p.accuracy, 0.9) << "seed " << seed;
    EXPECT_LE(g.epsilon_report->epsilon, 2.0);
    EXPECT_LE(p.epsilon_report->epsilon, 2.0);
  }
}

TEST(CalibrateGaussianTest, HitsBudget) {
  const GaussianParams g = *CalibrateGaussian(1.0, 1e-5, 100, 0.05, 64);
  const AccountingJob job = *AccountingJob::Create(100, 0.05, 1, 1.0, 1e-5, 64);
  const double eps = Account(g, job)->epsilon;
  EXPECT_LE(eps, 1.0);
  EXPECT_GT(eps, 0.99);
  const GaussianParams slightly_less = *GaussianParams::Create(g.sigma() * 0.999);
  EXPECT_GT(Account(slightly_less, job)->epsilon, 1.0);
}

}  // namespace
}  // namespace plrvo
