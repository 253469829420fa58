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

#include "absl/strings/str_cat.h"
#include "plrvo/sampler.h"
#include "plrvo/status.h"

namespace plrvo {
namespace {

constexpr std::int64_t kGradientBlock = 64;
constexpr std::uint64_t kSampleStream = 3;
constexpr std::uint64_t kNoiseStream = 4;

}  // namespace

Dataset MakeBlobs(std::int64_t n, int dim, double separation,
                  std::uint64_t seed, std::uint64_t stream) {
  Xoshiro256 rng(seed, stream);
  Dataset data;
  data.features.resize(n, dim);
  data.labels.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double label = (i % 2 == 0) ? 1.0 : 0.0;
    const Eigen::VectorXd noise = SampleGaussianNoise(1.0, dim, rng);
    data.features.row(i) = noise.transpose();
    data.features(i, 0) += (label > 0.5 ? 0.5 : -0.5) * separation;
    data.labels[i] = label;
  }
  return data;
}

Eigen::VectorXd L2Clip(const Eigen::VectorXd& g, double clip_C) {
  const double norm = g.norm();
  if (norm <= clip_C || norm == 0.0) return g;
  return g * (clip_C / norm);
}

Eigen::VectorXd LogisticGradient(const Eigen::VectorXd& weights,
                                 const Eigen::VectorXd& x, double label) {
  const double margin = weights.dot(x);
  const double p = 1.0 / (1.0 + std::exp(-margin));
  return (p - label) * x;
}

Eigen::VectorXd ClippedGradientSum(const Eigen::VectorXd& weights,
                                   const Dataset& data,
                                   const std::vector<std::int64_t>& batch,
                                   double clip_C,
                                   const ExecutionOptions& exec) {
  const int dim = static_cast<int>(weights.size());
  const std::vector<double> sum = DeterministicBlockSum(
      0, static_cast<std::int64_t>(batch.size()) - 1, dim, kGradientBlock,
      [&](std::int64_t begin, std::int64_t end, std::span<double> partial) {
        for (std::int64_t j = begin; j <= end; ++j) {
          const std::int64_t i = batch[j];
          const Eigen::VectorXd g = L2Clip(
              LogisticGradient(weights, data.features.row(i).transpose(),
                               data.labels[i]),
              clip_C);
          for (int c = 0; c < dim; ++c) partial[c] += g[c];
        }
      },
      exec);
  return Eigen::Map<const Eigen::VectorXd>(sum.data(), dim);
}

Eigen::VectorXd DrawNoise(const TrainingMechanism& mechanism, double clip_C,
                          int dim, Xoshiro256& rng) {
  if (const auto* plrv = std::get_if<GammaPlrvParams>(&mechanism)) {
    return SamplePlrvNoise(*plrv, dim, rng).coords;
  }
  if (const auto* gauss = std::get_if<GaussianParams>(&mechanism)) {
    return SampleGaussianNoise(clip_C * gauss->sigma(), dim, rng);
  }
  return Eigen::VectorXd::Zero(dim);
}

Eigen::VectorXd NoisyStep(const Eigen::VectorXd& weights, const Dataset& data,
                          const std::vector<std::int64_t>& batch,
                          const Hyper& hyper,
                          const TrainingMechanism& mechanism,
                          Xoshiro256& noise_rng,
                          const ExecutionOptions& exec) {
  const Eigen::VectorXd sum =
      ClippedGradientSum(weights, data, batch, hyper.clip, exec);
  const Eigen::VectorXd noise = DrawNoise(
      mechanism, hyper.clip, static_cast<int>(weights.size()), noise_rng);
  return weights - hyper.learning_rate * (sum / hyper.batch + noise);
}

double Accuracy(const Eigen::VectorXd& weights, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  std::int64_t correct = 0;
  for (std::int64_t i = 0; i < data.size(); ++i) {
    const double predicted = data.features.row(i).dot(weights) > 0.0 ? 1.0 : 0.0;
    if (predicted == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

absl::StatusOr<TrainingOutcome> Train(const TrainingRun& run) {
  const std::int64_t n = run.train.size();
  const int dim = static_cast<int>(run.train.features.cols());
  const Hyper& hyper = run.hyper;
  if (n < 1 || dim < 1) {
    return absl::InvalidArgumentError("training set must be non-empty");
  }
  if (!(hyper.batch > 0.0 && hyper.batch <= static_cast<double>(n))) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected batch size must lie in (0, ", n, "], got ", hyper.batch));
  }
  if (hyper.epochs < 1 || !(hyper.clip > 0.0) ||
      !(hyper.learning_rate > 0.0)) {
    return absl::InvalidArgumentError(
        "epochs, clip and learning rate must be positive");
  }
  TrainingOutcome out;
  out.model_dim = dim;
  out.sampling_rate_zeta = hyper.batch / static_cast<double>(n);
  out.steps_T = static_cast<std::int64_t>(
      std::ceil(hyper.epochs * static_cast<double>(n) / hyper.batch));

  Xoshiro256 sample_rng(run.seed, kSampleStream);
  Xoshiro256 noise_rng(run.seed, kNoiseStream);
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(dim);
  double abs_noise = 0.0;
  double batch_total = 0.0;
  const bool noisy = !std::holds_alternative<ZeroNoise>(run.mechanism);
  for (std::int64_t t = 0; t < out.steps_T; ++t) {
    const std::vector<std::int64_t> batch =
        PoissonSubsample(n, out.sampling_rate_zeta, sample_rng);
    batch_total += static_cast<double>(batch.size());
    const Eigen::VectorXd sum =
        ClippedGradientSum(weights, run.train, batch, hyper.clip, run.exec);
    const Eigen::VectorXd noise =
        DrawNoise(run.mechanism, hyper.clip, dim, noise_rng);
    abs_noise += noise.cwiseAbs().sum();
    weights -= hyper.learning_rate * (sum / hyper.batch + noise);
  }
  out.mean_abs_noise =
      abs_noise / (static_cast<double>(out.steps_T) * static_cast<double>(dim));
  out.mean_batch_size = batch_total / static_cast<double>(out.steps_T);
  out.weights = std::move(weights);
  out.accuracy = Accuracy(out.weights, run.test);

  if (noisy) {
    Mechanism mechanism =
        std::holds_alternative<GammaPlrvParams>(run.mechanism)
            ? Mechanism(std::get<GammaPlrvParams>(run.mechanism))
            : Mechanism(std::get<GaussianParams>(run.mechanism));
    PLRVO_ASSIGN_OR_RETURN(
        out.lambda_max,
        DefaultLambdaMax(mechanism, hyper.clip, kDefaultLambdaMax));
    PLRVO_ASSIGN_OR_RETURN(
        AccountingJob job,
        AccountingJob::Create(out.steps_T, out.sampling_rate_zeta, dim,
                              hyper.clip, run.delta, out.lambda_max));
    PLRVO_ASSIGN_OR_RETURN(AccountResult report,
                           Account(mechanism, job, AccountOptions{}));
    out.epsilon_report = std::move(report);
  }
  return out;
}

absl::StatusOr<GaussianParams> CalibrateGaussian(double epsilon, double delta,
                                                 std::int64_t steps_T,
                                                 double zeta, int lambda_max) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("target epsilon must be finite and > 0");
  }
  // Gaussian accounting ignores the clip and model dimension.
  PLRVO_ASSIGN_OR_RETURN(
      AccountingJob job,
      AccountingJob::Create(steps_T, zeta, 1, 1.0, delta, lambda_max));
  auto eps_at = [&](double sigma) -> absl::StatusOr<double> {
    PLRVO_ASSIGN_OR_RETURN(GaussianParams params,
                           GaussianParams::Create(sigma));
    PLRVO_ASSIGN_OR_RETURN(AccountResult r, Account(params, job));
    return r.epsilon;
  };
  double lo = 1e-3, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    PLRVO_ASSIGN_OR_RETURN(double e, eps_at(hi));
    if (e <= epsilon) break;
    lo = hi;
    hi *= 2.0;
    if (i == 199) return NonConvergenceError("no noise multiplier found");
  }
  while (hi / lo - 1.0 > 1e-6) {
    const double mid = std::sqrt(lo * hi);
    PLRVO_ASSIGN_OR_RETURN(double e, eps_at(mid));
    if (e <= epsilon) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return GaussianParams::Create(hi);
}

}  // namespace plrvo
