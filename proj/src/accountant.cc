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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "absl/strings/str_cat.h"
#include "plrvo/majorization.h"
#include "plrvo/numerics.h"
#include "plrvo/status.h"

namespace plrvo {
namespace {

using AlphaMap = std::map<int, double>;

constexpr std::int64_t kBlockSize = 4096;
constexpr std::int64_t kAcceleratedHead = 1024;
constexpr double kAcceleratedRatio = 1.01;
constexpr double kCurveSlack = 1e-10;

// log(eta / (2 eta - 1)) and log((eta - 1) / (2 eta - 1)) for eta >= 2.
inline double LogB1(int eta) { return std::log(eta / (2.0 * eta - 1.0)); }
inline double LogB2(int eta) {
  return std::log((eta - 1.0) / (2.0 * eta - 1.0));
}

absl::Status CheckZeta(double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sampling rate must lie in [0, 1], got ", zeta));
  }
  return absl::OkStatus();
}

absl::Status CheckLambdas(std::span<const int> lambdas) {
  if (lambdas.empty()) {
    return absl::InvalidArgumentError("at least one moment order is required");
  }
  for (int l : lambdas) {
    if (l < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("moment orders must be >= 1, got ", l));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckCoordinate(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    return absl::InvalidArgumentError(
        absl::StrCat("coordinate magnitude must be >= 0, got ", x));
  }
  return absl::OkStatus();
}

// Largest integer lambda with lambda * x * theta < 1 reported as the
// admissible cap, following the floor(1/(x theta)) - 1 convention.
absl::Status CheckPlrvDomain(const GammaPlrvParams& params, double x,
                             int lambda) {
  if (x == 0.0) return absl::OkStatus();
  return ValidateMgfDomain(lambda, x, params);
}

// Shared driver for the two Laplace-family multivariate sums. `log_h_fn`
// fills log H(x, eta) for eta = 0..max_eta.
template <typename LogHFn>
MultivariateResult MultivariateSum(double zeta, std::int64_t n, double clip,
                                   std::span<const int> lambdas, SumMode mode,
                                   const ExecutionOptions& exec,
                                   LogHFn log_h_fn) {
  const internal::MomentKernel kernel(zeta, lambdas);
  const std::size_t width = kernel.size();
  MultivariateResult result;
  if (clip == 0.0 || zeta == 0.0) {
    result.log_moments.assign(width, 0.0);
    if (mode == SumMode::kAccelerated) result.error_estimate = 0.0;
    return result;
  }

  auto coordinate_moments = [&](double s, std::vector<double>& log_h,
                                std::span<double> out) {
    log_h_fn(MajorizationSet::CoordinateAt(clip, s), std::span<double>(log_h));
    kernel.Combine(log_h, out);
  };

  auto exact_block = [&](std::int64_t begin, std::int64_t end,
                         std::span<double> partial) {
    std::vector<double> log_h(kernel.max_eta() + 1);
    std::vector<double> moments(width);
    for (std::int64_t i = begin; i <= end; ++i) {
      coordinate_moments(static_cast<double>(i), log_h, moments);
      for (std::size_t w = 0; w < width; ++w) partial[w] += moments[w];
    }
  };

  if (mode == SumMode::kExact || n <= kAcceleratedHead) {
    result.log_moments =
        DeterministicBlockSum(1, n, width, kBlockSize, exact_block, exec);
    if (mode == SumMode::kAccelerated) result.error_estimate = 0.0;
    return result;
  }

  // Head summed exactly; tail sum_{i=h+1}^{n} f(i) ~ int_{h+1/2}^{n+1/2} f.
  std::vector<double> head = DeterministicBlockSum(
      1, kAcceleratedHead, width, kBlockSize, exact_block, exec);

  std::vector<double> nodes;
  const double lo = static_cast<double>(kAcceleratedHead) + 0.5;
  const double hi = static_cast<double>(n) + 0.5;
  for (double s = lo; s < hi; s *= kAcceleratedRatio) nodes.push_back(s);
  nodes.push_back(hi);

  std::vector<double> values(nodes.size() * width);
  ParallelFor(
      static_cast<std::int64_t>(nodes.size()),
      [&](std::int64_t j) {
        std::vector<double> log_h(kernel.max_eta() + 1);
        coordinate_moments(nodes[j], log_h,
                           std::span<double>(values.data() + j * width, width));
      },
      exec);

  // Trapezoid on every node, and on every other node for the error estimate.
  std::vector<double> fine(width, 0.0), coarse(width, 0.0);
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const double h = nodes[j + 1] - nodes[j];
    for (std::size_t w = 0; w < width; ++w) {
      fine[w] += 0.5 * h * (values[j * width + w] + values[(j + 1) * width + w]);
    }
  }
  std::size_t j = 0;
  while (j + 1 < nodes.size()) {
    const std::size_t next = std::min(j + 2, nodes.size() - 1);
    const double h = nodes[next] - nodes[j];
    for (std::size_t w = 0; w < width; ++w) {
      coarse[w] +=
          0.5 * h * (values[j * width + w] + values[next * width + w]);
    }
    j = next;
  }

  double error = 0.0;
  result.log_moments.resize(width);
  for (std::size_t w = 0; w < width; ++w) {
    result.log_moments[w] = head[w] + fine[w];
    error = std::max(error, std::fabs(fine[w] - coarse[w]) / 3.0);
  }
  result.error_estimate = error;
  return result;
}

std::map<std::string, double> ParamsOf(const Mechanism& mechanism) {
  if (const auto* p = std::get_if<GammaPlrvParams>(&mechanism)) {
    return {{"k", p->k()}, {"theta", p->theta()}};
  }
  if (const auto* p = std::get_if<GaussianParams>(&mechanism)) {
    return {{"sigma", p->sigma()}};
  }
  return {{"b", std::get<LaplaceParams>(mechanism).b()}};
}

}  // namespace

namespace internal {

MomentKernel::MomentKernel(double zeta, std::span<const int> lambdas)
    : lambdas_(lambdas.begin(), lambdas.end()) {
  const double log_zeta = std::log(zeta);
  const double log_one_minus_zeta = std::log1p(-zeta);
  for (int l : lambdas_) max_eta_ = std::max(max_eta_, l + 1);
  log_weights_.reserve(lambdas_.size());
  for (int l : lambdas_) {
    const int n = l + 1;
    std::vector<double> w(n + 1);
    for (int eta = 0; eta <= n; ++eta) {
      w[eta] = LogBinomialUnchecked(n, eta) +
               ScaledLog(n - eta, log_one_minus_zeta) +
               ScaledLog(eta, log_zeta);
    }
    log_weights_.push_back(std::move(w));
  }
}

void MomentKernel::Combine(std::span<const double> log_h,
                           std::span<double> out) const {
  for (std::size_t j = 0; j < lambdas_.size(); ++j) {
    const std::vector<double>& w = log_weights_[j];
    double hi = kLogZero;
    for (std::size_t eta = 0; eta < w.size(); ++eta) {
      hi = std::max(hi, w[eta] + log_h[eta]);
    }
    double sum = 0.0;
    for (std::size_t eta = 0; eta < w.size(); ++eta) {
      sum += std::exp(w[eta] + log_h[eta] - hi);
    }
    out[j] = hi + std::log(sum);
  }
}

void PlrvLogG(double k, double theta, double x, std::span<double> log_h) {
  std::fill(log_h.begin(), log_h.end(), 0.0);
  if (x == 0.0) return;
  const double xt = x * theta;
  for (std::size_t e = 2; e < log_h.size(); ++e) {
    const int eta = static_cast<int>(e);
    const double minus = LogB1(eta) - k * std::log1p(-(eta - 1) * xt);
    const double plus = LogB2(eta) - k * std::log1p(eta * xt);
    log_h[e] = LogSumExpPair(minus, plus);
  }
}

void LaplaceLogF(double b, double x, std::span<double> log_h) {
  std::fill(log_h.begin(), log_h.end(), 0.0);
  if (x == 0.0) return;
  const double r = x / b;
  for (std::size_t e = 2; e < log_h.size(); ++e) {
    const int eta = static_cast<int>(e);
    const double minus = LogB1(eta) + (eta - 1) * r;
    const double plus = LogB2(eta) - eta * r;
    log_h[e] = LogSumExpPair(minus, plus);
  }
}

}  // namespace internal

absl::StatusOr<double> GammaMgfLog(const GammaPlrvParams& params, double t) {
  const double product = t * params.theta();
  if (!(product < 1.0)) {
    return MgfDomainViolation(
        0, absl::StrCat("Gamma MGF undefined at t * theta = ", product));
  }
  return -params.k() * std::log1p(-product);
}

absl::StatusOr<double> PlrvGTerm(const GammaPlrvParams& params, double x,
                                 int eta) {
  PLRVO_RETURN_IF_ERROR(CheckCoordinate(x));
  if (eta < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("moment index must be >= 0, got ", eta));
  }
  if (eta <= 1) return 1.0;
  PLRVO_RETURN_IF_ERROR(CheckPlrvDomain(params, x, eta - 1));
  std::vector<double> log_h(eta + 1);
  internal::PlrvLogG(params.k(), params.theta(), x, log_h);
  return std::exp(log_h[eta]);
}

absl::StatusOr<double> PlrvUnivariateLogMoment(const GammaPlrvParams& params,
                                               double x, double zeta,
                                               int lambda) {
  PLRVO_RETURN_IF_ERROR(CheckCoordinate(x));
  PLRVO_RETURN_IF_ERROR(CheckZeta(zeta));
  const int lambdas[] = {lambda};
  PLRVO_RETURN_IF_ERROR(CheckLambdas(lambdas));
  PLRVO_RETURN_IF_ERROR(CheckPlrvDomain(params, x, lambda));
  if (x == 0.0 || zeta == 0.0) return 0.0;
  const internal::MomentKernel kernel(zeta, lambdas);
  std::vector<double> log_h(kernel.max_eta() + 1);
  internal::PlrvLogG(params.k(), params.theta(), x, log_h);
  double out = 0.0;
  kernel.Combine(log_h, std::span<double>(&out, 1));
  return out;
}

absl::StatusOr<double> LaplaceUnivariateLogMoment(const LaplaceParams& params,
                                                  double x, double zeta,
                                                  int lambda) {
  PLRVO_RETURN_IF_ERROR(CheckCoordinate(x));
  PLRVO_RETURN_IF_ERROR(CheckZeta(zeta));
  const int lambdas[] = {lambda};
  PLRVO_RETURN_IF_ERROR(CheckLambdas(lambdas));
  if (x == 0.0 || zeta == 0.0) return 0.0;
  const internal::MomentKernel kernel(zeta, lambdas);
  std::vector<double> log_h(kernel.max_eta() + 1);
  internal::LaplaceLogF(params.b(), x, log_h);
  double out = 0.0;
  kernel.Combine(log_h, std::span<double>(&out, 1));
  return out;
}

absl::StatusOr<double> GaussianSubsampledLogMoment(const GaussianParams& params,
                                                   double zeta, int lambda) {
  PLRVO_RETURN_IF_ERROR(CheckZeta(zeta));
  const int lambdas[] = {lambda};
  PLRVO_RETURN_IF_ERROR(CheckLambdas(lambdas));
  const internal::MomentKernel kernel(zeta, lambdas);
  const double two_var = 2.0 * params.sigma() * params.sigma();
  std::vector<double> log_h(kernel.max_eta() + 1);
  for (std::size_t eta = 0; eta < log_h.size(); ++eta) {
    const double e = static_cast<double>(eta);
    log_h[eta] = (e * e - e) / two_var;
  }
  double out = 0.0;
  kernel.Combine(log_h, std::span<double>(&out, 1));
  return out;
}

absl::StatusOr<MultivariateResult> PlrvMultivariateLogMoments(
    const GammaPlrvParams& params, double zeta, std::int64_t model_dim_N,
    double clip_C, std::span<const int> lambdas, SumMode mode,
    const ExecutionOptions& exec) {
  PLRVO_RETURN_IF_ERROR(CheckZeta(zeta));
  PLRVO_RETURN_IF_ERROR(CheckLambdas(lambdas));
  PLRVO_RETURN_IF_ERROR(CheckCoordinate(clip_C));
  if (model_dim_N < 1) {
    return absl::InvalidArgumentError("model_dim_N must be >= 1");
  }
  const int lambda_max = *std::max_element(lambdas.begin(), lambdas.end());
  PLRVO_RETURN_IF_ERROR(CheckPlrvDomain(params, clip_C, lambda_max));
  const double k = params.k();
  const double theta = params.theta();
  return MultivariateSum(zeta, model_dim_N, clip_C, lambdas, mode, exec,
                         [k, theta](double x, std::span<double> log_h) {
                           internal::PlrvLogG(k, theta, x, log_h);
                         });
}

absl::StatusOr<MultivariateResult> LaplaceMultivariateLogMoments(
    const LaplaceParams& params, double zeta, std::int64_t model_dim_N,
    double clip_C, std::span<const int> lambdas, SumMode mode,
    const ExecutionOptions& exec) {
  PLRVO_RETURN_IF_ERROR(CheckZeta(zeta));
  PLRVO_RETURN_IF_ERROR(CheckLambdas(lambdas));
  PLRVO_RETURN_IF_ERROR(CheckCoordinate(clip_C));
  if (model_dim_N < 1) {
    return absl::InvalidArgumentError("model_dim_N must be >= 1");
  }
  const double b = params.b();
  return MultivariateSum(zeta, model_dim_N, clip_C, lambdas, mode, exec,
                         [b](double x, std::span<double> log_h) {
                           internal::LaplaceLogF(b, x, log_h);
                         });
}

absl::StatusOr<double> PlrvMultivariateLogMoment(const GammaPlrvParams& params,
                                                 const AccountingJob& job,
                                                 int lambda,
                                                 const ExecutionOptions& exec) {
  PLRVO_RETURN_IF_ERROR(Validate(job, params));
  if (lambda > job.lambda_max()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "lambda ", lambda, " exceeds job lambda_max ", job.lambda_max()));
  }
  const int lambdas[] = {lambda};
  PLRVO_ASSIGN_OR_RETURN(
      MultivariateResult r,
      PlrvMultivariateLogMoments(params, job.sampling_rate_zeta(),
                                 job.model_dim_N(), job.clip_C(), lambdas,
                                 SumMode::kExact, exec));
  return r.log_moments[0];
}

absl::StatusOr<double> LaplaceMultivariateLogMoment(
    const LaplaceParams& params, const AccountingJob& job, int lambda,
    const ExecutionOptions& exec) {
  const int lambdas[] = {lambda};
  PLRVO_ASSIGN_OR_RETURN(
      MultivariateResult r,
      LaplaceMultivariateLogMoments(params, job.sampling_rate_zeta(),
                                    job.model_dim_N(), job.clip_C(), lambdas,
                                    SumMode::kExact, exec));
  return r.log_moments[0];
}

double LaplacePrivacyLossBound(const LaplaceParams& params, double clip_C) {
  return clip_C / params.b();
}

absl::StatusOr<LogMomentCurve> LogMomentCurve::Create(
    CurveMetadata metadata, std::map<int, double> alpha) {
  if (alpha.empty()) {
    return absl::InvalidArgumentError("log moment curve must be non-empty");
  }
  if (metadata.composed_steps < 1) {
    return absl::InvalidArgumentError("composed_steps must be >= 1");
  }
  double previous = 0.0;
  for (const auto& [lambda, value] : alpha) {
    if (lambda < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("moment order must be >= 1, got ", lambda));
    }
    if (std::isnan(value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("alpha(", lambda, ") is NaN"));
    }
    const double slack = kCurveSlack * std::max(1.0, std::fabs(value));
    if (value < -slack) {
      return absl::InvalidArgumentError(
          absl::StrCat("alpha(", lambda, ") = ", value, " is negative"));
    }
    if (value < previous - slack) {
      return absl::InvalidArgumentError(absl::StrCat(
          "alpha must be nondecreasing in lambda; alpha(", lambda, ") = ",
          value, " < ", previous));
    }
    previous = std::max(previous, value);
  }
  return LogMomentCurve(std::move(metadata), std::move(alpha));
}

absl::StatusOr<LogMomentCurve> Compose(const LogMomentCurve& curve,
                                       std::int64_t steps_T) {
  if (steps_T < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("steps_T must be >= 1, got ", steps_T));
  }
  std::map<int, double> alpha;
  const double t = static_cast<double>(steps_T);
  for (const auto& [lambda, value] : curve.alpha()) alpha[lambda] = t * value;
  CurveMetadata metadata = curve.metadata();
  metadata.composed_steps *= steps_T;
  return LogMomentCurve::Create(std::move(metadata), std::move(alpha));
}

namespace {

double BalleTerm(int lambda, double alpha, double log_delta) {
  const double l = static_cast<double>(lambda);
  return alpha / l + std::log(l / (l + 1.0)) -
         (log_delta + std::log(l + 1.0)) / l;
}

absl::StatusOr<EpsilonResult> MinimizeBalle(const std::map<int, double>& alpha,
                                            double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (alpha.empty()) {
    return absl::InvalidArgumentError("empty log moment curve");
  }
  const double log_delta = std::log(delta);
  EpsilonResult best{std::numeric_limits<double>::infinity(), 0};
  for (const auto& [lambda, value] : alpha) {
    const double eps = BalleTerm(lambda, value, log_delta);
    if (eps < best.epsilon) best = {eps, lambda};
  }
  if (best.argmin_lambda == 0) best.argmin_lambda = alpha.begin()->first;
  return best;
}

}  // namespace

absl::StatusOr<EpsilonResult> EpsilonFromDelta(const LogMomentCurve& curve,
                                               double delta) {
  return MinimizeBalle(curve.alpha(), delta);
}

absl::StatusOr<double> DeltaFromEpsilon(const LogMomentCurve& curve,
                                        double epsilon) {
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be >= 0, got ", epsilon));
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [lambda, value] : curve.alpha()) {
    best = std::min(best, value - lambda * epsilon);
  }
  return std::min(1.0, std::exp(best));
}

std::vector<int> CoarseLambdaGrid(int lambda_max) {
  std::vector<int> grid;
  for (long l = 1; l <= lambda_max; l *= 2) grid.push_back(static_cast<int>(l));
  if (grid.empty() || grid.back() != lambda_max) grid.push_back(lambda_max);
  return grid;
}

std::vector<int> FineLambdaGrid(int coarse_argmin, int lambda_max) {
  const int lo = std::max(1, coarse_argmin / 2);
  const int hi = static_cast<int>(
      std::min<long>(lambda_max, 2L * static_cast<long>(coarse_argmin)));
  std::vector<int> grid(hi - lo + 1);
  std::iota(grid.begin(), grid.end(), lo);
  return grid;
}

absl::StatusOr<EpsilonResult> EpsilonCoarseToFine(
    const AlphaEvaluator& composed_alpha, int lambda_max, double delta,
    std::map<int, double>* evaluated) {
  if (lambda_max < 1) {
    return absl::InvalidArgumentError("lambda_max must be >= 1");
  }
  std::map<int, double> points;
  PLRVO_ASSIGN_OR_RETURN(points, composed_alpha(CoarseLambdaGrid(lambda_max)));
  PLRVO_ASSIGN_OR_RETURN(EpsilonResult coarse, MinimizeBalle(points, delta));

  std::vector<int> missing;
  for (int l : FineLambdaGrid(coarse.argmin_lambda, lambda_max)) {
    if (!points.contains(l)) missing.push_back(l);
  }
  if (!missing.empty()) {
    PLRVO_ASSIGN_OR_RETURN(AlphaMap fine, composed_alpha(missing));
    points.merge(fine);
  }
  PLRVO_ASSIGN_OR_RETURN(EpsilonResult result, MinimizeBalle(points, delta));
  if (evaluated != nullptr) *evaluated = std::move(points);
  return result;
}

absl::StatusOr<EpsilonResult> EpsilonFromDeltaCoarseToFine(
    const LogMomentCurve& curve, double delta) {
  const std::map<int, double>& alpha = curve.alpha();
  auto lookup = [&](const std::vector<int>& lambdas)
      -> absl::StatusOr<std::map<int, double>> {
    std::map<int, double> out;
    for (int l : lambdas) {
      auto it = alpha.find(l);
      if (it == alpha.end()) {
        return absl::InvalidArgumentError(
            absl::StrCat("curve has no point at lambda = ", l));
      }
      out.emplace(l, it->second);
    }
    return out;
  };
  return EpsilonCoarseToFine(lookup, alpha.rbegin()->first, delta);
}

absl::StatusOr<LogMomentCurve> PerStepCurve(
    const Mechanism& mechanism, const AccountingJob& job,
    std::span<const int> lambdas, const AccountOptions& options,
    std::optional<double>* error_estimate) {
  PLRVO_RETURN_IF_ERROR(CheckLambdas(lambdas));
  std::vector<double> values;
  std::optional<double> error;
  if (const auto* plrv = std::get_if<GammaPlrvParams>(&mechanism)) {
    PLRVO_RETURN_IF_ERROR(Validate(job, *plrv));
    PLRVO_ASSIGN_OR_RETURN(
        MultivariateResult r,
        PlrvMultivariateLogMoments(*plrv, job.sampling_rate_zeta(),
                                   job.model_dim_N(), job.clip_C(), lambdas,
                                   options.mode, options.exec));
    values = std::move(r.log_moments);
    error = r.error_estimate;
  } else if (const auto* lap = std::get_if<LaplaceParams>(&mechanism)) {
    PLRVO_ASSIGN_OR_RETURN(
        MultivariateResult r,
        LaplaceMultivariateLogMoments(*lap, job.sampling_rate_zeta(),
                                      job.model_dim_N(), job.clip_C(),
                                      lambdas, options.mode, options.exec));
    values = std::move(r.log_moments);
    error = r.error_estimate;
  } else {
    const auto& gauss = std::get<GaussianParams>(mechanism);
    for (int l : lambdas) {
      PLRVO_ASSIGN_OR_RETURN(
          double v,
          GaussianSubsampledLogMoment(gauss, job.sampling_rate_zeta(), l));
      values.push_back(v);
    }
  }
  std::map<int, double> alpha;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    alpha[lambdas[i]] = values[i];
  }
  if (error_estimate != nullptr) *error_estimate = error;
  CurveMetadata metadata{std::string(MechanismName(mechanism)),
                         ParamsOf(mechanism), job, 1};
  return LogMomentCurve::Create(std::move(metadata), std::move(alpha));
}

absl::StatusOr<AccountResult> Account(const Mechanism& mechanism,
                                      const AccountingJob& job,
                                      const AccountOptions& options) {
  if (const auto* plrv = std::get_if<GammaPlrvParams>(&mechanism)) {
    PLRVO_RETURN_IF_ERROR(Validate(job, *plrv));
  }
  const double steps = static_cast<double>(job.steps_T());
  std::map<int, double> per_step;
  std::optional<double> error;

  auto evaluate = [&](const std::vector<int>& lambdas)
      -> absl::StatusOr<std::map<int, double>> {
    std::optional<double> batch_error;
    PLRVO_ASSIGN_OR_RETURN(
        LogMomentCurve curve,
        PerStepCurve(mechanism, job, lambdas, options, &batch_error));
    if (batch_error.has_value()) {
      error = std::max(error.value_or(0.0), *batch_error);
    }
    std::map<int, double> composed;
    for (const auto& [l, a] : curve.alpha()) {
      per_step[l] = a;
      composed[l] = steps * a;
    }
    return composed;
  };

  EpsilonResult eps{};
  if (options.search == LambdaSearch::kCoarseToFine) {
    PLRVO_ASSIGN_OR_RETURN(
        eps, EpsilonCoarseToFine(evaluate, job.lambda_max(), job.delta()));
  } else {
    std::vector<int> all(job.lambda_max());
    std::iota(all.begin(), all.end(), 1);
    PLRVO_ASSIGN_OR_RETURN(AlphaMap composed, evaluate(all));
    PLRVO_ASSIGN_OR_RETURN(eps, MinimizeBalle(composed, job.delta()));
  }
  const double alpha_at_argmin = per_step.at(eps.argmin_lambda);
  CurveMetadata metadata{std::string(MechanismName(mechanism)),
                         ParamsOf(mechanism), job, 1};
  PLRVO_ASSIGN_OR_RETURN(LogMomentCurve curve,
                         LogMomentCurve::Create(std::move(metadata),
                                                std::move(per_step)));
  return AccountResult{eps.epsilon, eps.argmin_lambda, alpha_at_argmin,
                       std::move(curve), error};
}

}  // namespace plrvo
