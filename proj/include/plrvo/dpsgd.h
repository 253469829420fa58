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

#ifndef PLRVO_DPSGD_H_
#define PLRVO_DPSGD_H_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "plrvo/accountant.h"
#include "plrvo/parallel.h"
#include "plrvo/params.h"
#include "plrvo/random.h"

namespace plrvo {

// Toy DP-SGD: logistic regression on two Gaussian blobs, Poisson
// subsampling, per-example l2 clipping, one noise draw per step added after
// the 1/B average, plain SGD.

struct Dataset {
  Eigen::MatrixXd features;  // one example per row
  Eigen::VectorXd labels;    // 0 or 1
  std::int64_t size() const { return features.rows(); }
};

// `n` points split evenly between N(+mu, I) (label 1) and N(-mu, I)
// (label 0) with mu = (separation / 2) * e_1.
Dataset MakeBlobs(std::int64_t n, int dim, double separation,
                  std::uint64_t seed, std::uint64_t stream);

// No noise at all. For tests only; it carries no privacy guarantee.
struct ZeroNoise {};

using TrainingMechanism = std::variant<GammaPlrvParams, GaussianParams,
                                       ZeroNoise>;

struct Hyper {
  double learning_rate = 0.02;
  int epochs = 5;
  // Expected batch size; the sampling rate is batch / |dataset|.
  double batch = 32.0;
  double clip = 1.0;
};

struct TrainingRun {
  Dataset train;
  Dataset test;
  Hyper hyper;
  TrainingMechanism mechanism = ZeroNoise{};
  std::uint64_t seed = 0;
  double delta = 1e-5;
  ExecutionOptions exec;
};

// Indices included independently with probability zeta, in increasing order.
template <typename Rng>
std::vector<std::int64_t> PoissonSubsample(std::int64_t n, double zeta,
                                           Rng& rng) {
  std::vector<std::int64_t> batch;
  for (std::int64_t i = 0; i < n; ++i) {
    if (UniformOpen01(rng) < zeta) batch.push_back(i);
  }
  return batch;
}

// g * min(1, C / ||g||_2); the zero vector is returned unchanged.
Eigen::VectorXd L2Clip(const Eigen::VectorXd& g, double clip_C);

// Gradient of the logistic loss at one example.
Eigen::VectorXd LogisticGradient(const Eigen::VectorXd& weights,
                                 const Eigen::VectorXd& x, double label);

// Sum of clipped per-example gradients over `batch`, reduced in a fixed order
// independent of the thread count.
Eigen::VectorXd ClippedGradientSum(const Eigen::VectorXd& weights,
                                   const Dataset& data,
                                   const std::vector<std::int64_t>& batch,
                                   double clip_C, const ExecutionOptions& exec);

// One noise vector of dimension `dim` for the mechanism. Gaussian noise has
// standard deviation clip * sigma; PLRV noise is not scaled by the clip.
Eigen::VectorXd DrawNoise(const TrainingMechanism& mechanism, double clip_C,
                          int dim, Xoshiro256& rng);

// w - lr * (sum / B + z).
Eigen::VectorXd NoisyStep(const Eigen::VectorXd& weights, const Dataset& data,
                          const std::vector<std::int64_t>& batch,
                          const Hyper& hyper,
                          const TrainingMechanism& mechanism,
                          Xoshiro256& noise_rng, const ExecutionOptions& exec);

double Accuracy(const Eigen::VectorXd& weights, const Dataset& data);

struct TrainingOutcome {
  Eigen::VectorXd weights;
  double accuracy = 0.0;
  std::int64_t steps_T = 0;
  double sampling_rate_zeta = 0.0;
  int model_dim = 0;
  // Accounting for exactly the (T, zeta, C, d) used; absent for ZeroNoise.
  std::optional<AccountResult> epsilon_report;
  int lambda_max = 0;
  // Mean |z_i| over every noise coordinate drawn.
  double mean_abs_noise = 0.0;
  double mean_batch_size = 0.0;
};

// T = ceil(epochs * |train| / batch) steps.
absl::StatusOr<TrainingOutcome> Train(const TrainingRun& run);

// Smallest noise multiplier (to 1e-6 relative) whose T-step epsilon at
// `delta` is at most `epsilon`.
absl::StatusOr<GaussianParams> CalibrateGaussian(double epsilon, double delta,
                                                 std::int64_t steps_T,
                                                 double zeta, int lambda_max);

}  // namespace plrvo

#endif  // PLRVO_DPSGD_H_
