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

#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "plrvo/accountant.h"
#include "plrvo/distortion.h"
#include "plrvo/dpsgd.h"
#include "plrvo/optimizer.h"
#include "plrvo/params.h"
#include "plrvo/random.h"
#include "plrvo/sampler.h"
#include "plrvo/serialization.h"
#include "plrvo/status.h"

namespace plrvo {
namespace {

struct Io {
  std::ostream& out;
  std::ostream& err;
};

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::NotFoundError(absl::StrCat("cannot write ", path));
  out << content;
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

// --threads wins; otherwise PLRV_THREADS; otherwise one worker. "max" (or
// 0) means all hardware threads.
absl::StatusOr<ExecutionOptions> ResolveExecution(const std::string& flag) {
  std::string value = flag;
  if (value.empty()) {
    const char* env = std::getenv("PLRV_THREADS");
    if (env != nullptr) value = env;
  }
  ExecutionOptions exec;
  if (value.empty()) return exec;
  if (value == "max") {
    exec.threads = 0;
    return exec;
  }
  int threads = 0;
  if (!absl::SimpleAtoi(value, &threads) || threads < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("thread count must be a non-negative integer or 'max', "
                     "got '", value, "'"));
  }
  exec.threads = threads;
  return exec;
}

absl::StatusOr<JobFile> LoadJob(const std::string& path) {
  PLRVO_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseJobFileText(text);
}

absl::StatusOr<AccountOptions> ParseAccountOptions(const std::string& mode,
                                                   const std::string& search,
                                                   const std::string& threads) {
  AccountOptions options;
  if (mode == "exact") {
    options.mode = SumMode::kExact;
  } else if (mode == "accelerated") {
    options.mode = SumMode::kAccelerated;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("--mode must be exact or accelerated, got ", mode));
  }
  if (search == "full") {
    options.search = LambdaSearch::kFull;
  } else if (search == "coarse") {
    options.search = LambdaSearch::kCoarseToFine;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("--lambda-search must be full or coarse, got ", search));
  }
  PLRVO_ASSIGN_OR_RETURN(options.exec, ResolveExecution(threads));
  return options;
}

std::string Dump(const Json& json) { return json.dump(2) + "\n"; }

// ---------------------------------------------------------------- account

struct AccountFlags {
  std::string job_path;
  std::string mode = "exact";
  std::string lambda_search = "full";
  std::string curve_path;
  std::string threads;
};

absl::Status RunAccount(const AccountFlags& flags, Io& io) {
  PLRVO_ASSIGN_OR_RETURN(
      AccountOptions options,
      ParseAccountOptions(flags.mode, flags.lambda_search, flags.threads));
  PLRVO_ASSIGN_OR_RETURN(JobFile file, LoadJob(flags.job_path));
  PLRVO_ASSIGN_OR_RETURN(AccountingJob job, ResolveJob(file));
  PLRVO_ASSIGN_OR_RETURN(AccountResult result,
                         Account(*file.mechanism, job, options));
  Json out = ToJson(result);
  out["mode"] = flags.mode;
  out["lambda_search"] = flags.lambda_search;
  out["job"] = ToJson(job);
  Json mechanism = ToJson(*file.mechanism);
  out["mechanism"] = mechanism["mechanism"];
  out["params"] = mechanism["params"];
  if (!flags.curve_path.empty()) {
    PLRVO_RETURN_IF_ERROR(
        WriteFile(flags.curve_path, CurveCsv(result.per_step_curve)));
  }
  io.out << Dump(out);
  return absl::OkStatus();
}

// ---------------------------------------------------------------- sweep-t

struct SweepFlags {
  std::string job_path;
  std::string t_values;
  std::string out_path;
  std::string mode = "exact";
  std::string threads;
};

// "1,5,10:20" -> 1, 5, 10, 11, ..., 20.
absl::StatusOr<std::vector<std::int64_t>> ParseTValues(const std::string& s) {
  std::vector<std::int64_t> values;
  for (absl::string_view part : absl::StrSplit(s, ',', absl::SkipEmpty())) {
    std::vector<std::string> range = absl::StrSplit(part, ':');
    std::int64_t lo = 0, hi = 0;
    if (range.size() == 1 && absl::SimpleAtoi(range[0], &lo)) {
      hi = lo;
    } else if (range.size() != 2 || !absl::SimpleAtoi(range[0], &lo) ||
               !absl::SimpleAtoi(range[1], &hi) || hi < lo) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad --t-values entry '", part, "'"));
    }
    if (lo < 1) return absl::InvalidArgumentError("T values must be >= 1");
    for (std::int64_t t = lo; t <= hi; ++t) values.push_back(t);
  }
  if (values.empty()) return absl::InvalidArgumentError("--t-values is empty");
  return values;
}

absl::Status RunSweep(const SweepFlags& flags, Io& io) {
  PLRVO_ASSIGN_OR_RETURN(AccountOptions options,
                         ParseAccountOptions(flags.mode, "full", flags.threads));
  PLRVO_ASSIGN_OR_RETURN(std::vector<std::int64_t> t_values,
                         ParseTValues(flags.t_values));
  PLRVO_ASSIGN_OR_RETURN(JobFile file, LoadJob(flags.job_path));
  PLRVO_ASSIGN_OR_RETURN(AccountingJob job, ResolveJob(file));
  std::vector<int> lambdas(job.lambda_max());
  std::iota(lambdas.begin(), lambdas.end(), 1);
  PLRVO_ASSIGN_OR_RETURN(LogMomentCurve per_step,
                         PerStepCurve(*file.mechanism, job, lambdas, options));
  std::string csv = "T,epsilon\n";
  for (std::int64_t t : t_values) {
    PLRVO_ASSIGN_OR_RETURN(LogMomentCurve composed, Compose(per_step, t));
    PLRVO_ASSIGN_OR_RETURN(EpsilonResult eps,
                           EpsilonFromDelta(composed, job.delta()));
    absl::StrAppend(&csv, t, ",", FormatDouble(eps.epsilon), "\n");
  }
  if (flags.out_path.empty()) {
    io.out << csv;
    return absl::OkStatus();
  }
  return WriteFile(flags.out_path, csv);
}

// --------------------------------------------------------------- optimize

struct OptimizeFlags {
  std::string job_path;
  std::string threads;
};

absl::Status RunOptimize(const OptimizeFlags& flags, Io& io) {
  PLRVO_ASSIGN_OR_RETURN(JobFile file, LoadJob(flags.job_path));
  PLRVO_ASSIGN_OR_RETURN(FeasibilityConfig cfg, ResolveFeasibilityConfig(file));
  PLRVO_ASSIGN_OR_RETURN(cfg.exec, ResolveExecution(flags.threads));
  cfg.search_accounting.exec = cfg.exec;
  PLRVO_ASSIGN_OR_RETURN(OptimizationResult result, Solve(cfg));
  Json out = ToJson(result);
  out["config"] = ToJson(cfg);
  io.out << Dump(out);
  return absl::OkStatus();
}

// ------------------------------------------------------------- distortion

struct DistortionFlags {
  bool table2 = false;
  std::string mechanism = "plrvo";
  double k = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double clip = 1.0;
  bool quadrature = false;
  std::string format = "json";
};

struct ReferenceCheck {
  std::string name;
  double expected;
  double value;
};

absl::StatusOr<bool> RunTable2(Io& io) {
  constexpr double kTolerance = 0.01;
  std::vector<ReferenceCheck> checks;
  for (const auto& [k, theta, expected] :
       {std::tuple{141.06, 8.32e-4, 8.58}, std::tuple{5242.4, 2.08e-5, 9.17}}) {
    PLRVO_ASSIGN_OR_RETURN(GammaPlrvParams p, GammaPlrvParams::Create(k, theta));
    checks.push_back({absl::StrCat("plrvo k=", k, " theta=", theta), expected,
                      PlrvDistortion(p).per_coordinate_l1});
  }
  for (const auto& [sigma, clip, expected] :
       {std::tuple{0.9456, 5.0, 3.77}, std::tuple{1.8812, 15.0, 22.51}}) {
    PLRVO_ASSIGN_OR_RETURN(GaussianParams p, GaussianParams::Create(sigma));
    checks.push_back({absl::StrCat("gaussian sigma=", sigma, " C=", clip),
                      expected, GaussianDistortion(p, clip)});
  }
  Json rows = Json::array();
  bool all = true;
  for (const ReferenceCheck& c : checks) {
    const bool pass = std::fabs(c.value - c.expected) <= kTolerance;
    all = all && pass;
    rows.push_back({{"name", c.name},
                    {"expected", c.expected},
                    {"value", c.value},
                    {"tolerance", kTolerance},
                    {"pass", pass}});
  }
  io.out << Dump({{"checks", rows}, {"pass", all}});
  return all;
}

absl::Status RunDistortion(const DistortionFlags& flags, Io& io, int& code) {
  if (flags.table2) {
    PLRVO_ASSIGN_OR_RETURN(bool pass, RunTable2(io));
    code = pass ? kExitOk : kExitNumerical;
    return absl::OkStatus();
  }
  if (flags.format != "json" && flags.format != "csv") {
    return absl::InvalidArgumentError("--format must be json or csv");
  }
  DistortionReport report;
  std::optional<double> quadrature;
  if (flags.mechanism == "plrvo") {
    PLRVO_ASSIGN_OR_RETURN(GammaPlrvParams p,
                           GammaPlrvParams::Create(flags.k, flags.theta));
    report = PlrvDistortion(p);
    if (flags.quadrature) {
      PLRVO_ASSIGN_OR_RETURN(quadrature, PlrvDistortionByQuadrature(p));
    }
  } else if (flags.mechanism == "gaussian") {
    PLRVO_ASSIGN_OR_RETURN(double value,
                           GaussianDistortion(flags.sigma, flags.clip));
    report = {"gaussian", value, true};
  } else {
    return absl::InvalidArgumentError(
        "--mechanism must be plrvo or gaussian for distortion");
  }
  if (flags.format == "csv") {
    io.out << DistortionCsvHeader() << DistortionCsvRow(report);
  } else {
    Json out = ToJson(report);
    if (quadrature.has_value()) out["l1_per_coord_quadrature"] = *quadrature;
    // The Gamma seed's distortion does not involve the clip.
    out["depends_on_clip"] = flags.mechanism == "gaussian";
    io.out << Dump(out);
  }
  return absl::OkStatus();
}

// ----------------------------------------------------------------- sample

struct SampleFlags {
  std::string mechanism = "plrvo";
  double k = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double b = 0.0;
  double clip = 1.0;
  std::int64_t n = 1;
  std::int64_t draws = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out_path;
  bool secure = false;
};

template <typename Rng>
absl::Status WriteSamples(const SampleFlags& flags, Rng& rng, Io& io) {
  std::optional<GammaPlrvParams> plrv;
  if (flags.mechanism == "plrvo") {
    PLRVO_ASSIGN_OR_RETURN(plrv, GammaPlrvParams::Create(flags.k, flags.theta));
  } else if (flags.mechanism == "gaussian") {
    PLRVO_RETURN_IF_ERROR(GaussianParams::Create(flags.sigma).status());
  } else if (flags.mechanism == "laplace") {
    PLRVO_RETURN_IF_ERROR(LaplaceParams::Create(flags.b).status());
  } else {
    return absl::InvalidArgumentError(
        "--mechanism must be plrvo, gaussian or laplace");
  }
  if (flags.n < 1 || flags.draws < 1) {
    return absl::InvalidArgumentError("--n and --draws must be >= 1");
  }
  std::ofstream file;
  std::ostream* sink = &io.out;
  if (!flags.out_path.empty()) {
    file.open(flags.out_path, std::ios::binary);
    if (!file) {
      return absl::NotFoundError(absl::StrCat("cannot write ", flags.out_path));
    }
    sink = &file;
  }
  *sink << SampleCsvHeader(flags.n);
  double abs_sum = 0.0;
  for (std::int64_t d = 0; d < flags.draws; ++d) {
    NoiseDraw draw;
    if (plrv.has_value()) {
      draw = SamplePlrvNoise(*plrv, flags.n, rng);
    } else if (flags.mechanism == "laplace") {
      draw = SampleLaplaceNoise(flags.b, flags.n, rng);
    } else {
      // The scale column holds the effective standard deviation C * sigma.
      draw.scale_b = flags.clip * flags.sigma;
      draw.coords = SampleGaussianNoise(draw.scale_b, flags.n, rng);
    }
    abs_sum += draw.coords.cwiseAbs().sum();
    *sink << SampleCsvRow(d, draw);
  }
  if (!flags.out_path.empty()) {
    double expected = 0.0;
    if (plrv.has_value()) {
      expected = PlrvDistortion(*plrv).per_coordinate_l1;
    } else if (flags.mechanism == "laplace") {
      expected = flags.b;
    } else {
      expected = flags.clip * flags.sigma * std::sqrt(2.0 / std::numbers::pi);
    }
    const double count =
        static_cast<double>(flags.draws) * static_cast<double>(flags.n);
    io.out << Dump({{"draws", flags.draws},
                    {"n", flags.n},
                    {"empirical_l1_per_coord", abs_sum / count},
                    {"expected_l1_per_coord", JsonNumber(expected)},
                    {"deterministic", !flags.secure}});
  }
  return absl::OkStatus();
}

absl::Status RunSample(const SampleFlags& flags, Io& io) {
  if (flags.secure) {
    io.err << "warning: --secure draws from std::random_device; output is "
              "not reproducible and seeds are ignored\n";
    SecureRandom rng;
    return WriteSamples(flags, rng, io);
  }
  Xoshiro256 rng(flags.seed, flags.stream);
  return WriteSamples(flags, rng, io);
}

// ------------------------------------------------------------- train-demo

struct TrainFlags {
  std::string mechanism = "plrvo";
  std::optional<double> epsilon;
  double delta = 1e-5;
  int epochs = 5;
  double batch = 32.0;
  double clip = 1.0;
  int dim = 2;
  std::uint64_t seed = 0;
  double learning_rate = 0.02;
  std::int64_t examples = 1000;
  std::int64_t test_examples = 1000;
  double separation = 4.0;
  std::optional<double> sigma;
  std::optional<double> k;
  std::optional<double> theta;
  std::string out_path;
  std::string threads;
};

absl::Status RunTrain(const TrainFlags& flags, Io& io) {
  PLRVO_ASSIGN_OR_RETURN(ExecutionOptions exec,
                         ResolveExecution(flags.threads));
  if (flags.dim < 1 || flags.dim > 512) {
    return absl::InvalidArgumentError("--dim must lie in [1, 512]");
  }
  if (flags.examples < 2) {
    return absl::InvalidArgumentError("--examples must be >= 2");
  }
  TrainingRun run;
  run.train = MakeBlobs(flags.examples, flags.dim, flags.separation,
                        flags.seed, 1);
  run.test = MakeBlobs(flags.test_examples, flags.dim, flags.separation,
                       flags.seed, 2);
  run.hyper = {flags.learning_rate, flags.epochs, flags.batch, flags.clip};
  run.seed = flags.seed;
  run.delta = flags.delta;
  run.exec = exec;
  const double n = static_cast<double>(flags.examples);
  const double zeta = flags.batch / n;
  const auto steps =
      static_cast<std::int64_t>(std::ceil(flags.epochs * n / flags.batch));

  Json calibration = Json::object();
  if (flags.mechanism == "plrvo") {
    if (flags.k.has_value() && flags.theta.has_value()) {
      PLRVO_ASSIGN_OR_RETURN(run.mechanism,
                             GammaPlrvParams::Create(*flags.k, *flags.theta));
    } else if (flags.epsilon.has_value()) {
      FeasibilityConfig cfg;
      cfg.clip_min = cfg.clip_max = flags.clip;
      cfg.clip_points = 1;
      PLRVO_ASSIGN_OR_RETURN(cfg.target,
                             PrivacyTarget::Create(*flags.epsilon, flags.delta));
      cfg.steps_T = steps;
      cfg.sampling_rate_zeta = zeta;
      cfg.model_dim_N = flags.dim;
      PLRVO_ASSIGN_OR_RETURN(OptimizationResult opt, Solve(cfg));
      PLRVO_ASSIGN_OR_RETURN(run.mechanism,
                             GammaPlrvParams::Create(opt.k_star, opt.theta_star));
      calibration = {{"method", "solve"},
                     {"achieved_epsilon", opt.achieved_epsilon}};
    } else {
      return absl::InvalidArgumentError(
          "plrvo needs --epsilon or both --k and --theta");
    }
  } else if (flags.mechanism == "gaussian") {
    if (flags.sigma.has_value()) {
      PLRVO_ASSIGN_OR_RETURN(run.mechanism, GaussianParams::Create(*flags.sigma));
    } else if (flags.epsilon.has_value()) {
      PLRVO_ASSIGN_OR_RETURN(
          run.mechanism, CalibrateGaussian(*flags.epsilon, flags.delta, steps,
                                           zeta, kDefaultLambdaMax));
      calibration = {{"method", "bisection"}};
    } else {
      return absl::InvalidArgumentError("gaussian needs --epsilon or --sigma");
    }
  } else if (flags.mechanism == "none") {
    run.mechanism = ZeroNoise{};
  } else {
    return absl::InvalidArgumentError(
        "--mechanism must be plrvo, gaussian or none");
  }

  PLRVO_ASSIGN_OR_RETURN(TrainingOutcome outcome, Train(run));

  Json ledger;
  ledger["seed"] = flags.seed;
  ledger["hyper"] = {{"learning_rate", flags.learning_rate},
                     {"epochs", flags.epochs},
                     {"batch", flags.batch},
                     {"clip", flags.clip},
                     {"dim", flags.dim},
                     {"examples", flags.examples},
                     {"test_examples", flags.test_examples},
                     {"separation", flags.separation},
                     {"delta", flags.delta}};
  if (flags.epsilon.has_value()) ledger["target_epsilon"] = *flags.epsilon;
  if (const auto* p = std::get_if<GammaPlrvParams>(&run.mechanism)) {
    ledger["mechanism"] = "plrvo";
    ledger["params"] = {{"k", p->k()}, {"theta", p->theta()}};
  } else if (const auto* p = std::get_if<GaussianParams>(&run.mechanism)) {
    ledger["mechanism"] = "gaussian";
    ledger["params"] = {{"sigma", p->sigma()}};
  } else {
    ledger["mechanism"] = "none";
    ledger["params"] = Json::object();
  }
  ledger["calibration"] = calibration;
  ledger["steps_T"] = outcome.steps_T;
  ledger["sampling_rate_zeta"] = outcome.sampling_rate_zeta;
  ledger["model_dim"] = outcome.model_dim;
  ledger["accuracy"] = outcome.accuracy;
  ledger["mean_abs_noise"] = outcome.mean_abs_noise;
  ledger["mean_batch_size"] = outcome.mean_batch_size;
  ledger["weights"] = std::vector<double>(
      outcome.weights.data(), outcome.weights.data() + outcome.weights.size());
  if (outcome.epsilon_report.has_value()) {
    Json report = ToJson(*outcome.epsilon_report);
    report["lambda_max"] = outcome.lambda_max;
    report["accounted_job"] = {{"steps_T", outcome.steps_T},
                               {"sampling_rate_zeta", outcome.sampling_rate_zeta},
                               {"clip_C", flags.clip},
                               {"model_dim_N", outcome.model_dim}};
    ledger["epsilon_report"] = report;
  } else {
    ledger["epsilon_report"] = nullptr;
  }
  const std::string text = Dump(ledger);
  if (flags.out_path.empty()) {
    io.out << text;
    return absl::OkStatus();
  }
  return WriteFile(flags.out_path, text);
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  const std::optional<ErrorKind> kind = GetErrorKind(status);
  if (kind == ErrorKind::kInfeasible ||
      status.code() == absl::StatusCode::kFailedPrecondition) {
    return kExitInfeasible;
  }
  if (kind.has_value() || status.code() == absl::StatusCode::kOutOfRange) {
    return kExitNumerical;
  }
  return kExitInput;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Noise design and privacy accounting for randomized-scale "
               "Laplace (PLRV-O) noise",
               "plrvo"};
  app.require_subcommand(1);

  AccountFlags account;
  CLI::App* account_cmd =
      app.add_subcommand("account", "Epsilon for one accounting job");
  account_cmd->add_option("job", account.job_path, "Job file (JSON)")
      ->required();
  account_cmd->add_option("--mode", account.mode, "exact | accelerated");
  account_cmd->add_option("--lambda-search", account.lambda_search,
                          "full | coarse");
  account_cmd->add_option("--curve", account.curve_path,
                          "Write the per-step curve as CSV");
  account_cmd->add_option("--threads", account.threads, "Worker count or max");

  SweepFlags sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep-t", "Epsilon for a list of step counts");
  sweep_cmd->add_option("job", sweep.job_path, "Job file (JSON)")->required();
  sweep_cmd->add_option("--t-values", sweep.t_values,
                        "Comma list; a:b expands to a..b")
      ->required();
  sweep_cmd->add_option("--out", sweep.out_path, "CSV path (default stdout)");
  sweep_cmd->add_option("--mode", sweep.mode, "exact | accelerated");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker count or max");

  OptimizeFlags optimize;
  CLI::App* optimize_cmd =
      app.add_subcommand("optimize", "Search (k, theta, C) maximizing SNR");
  optimize_cmd->add_option("job", optimize.job_path, "Job file (JSON)")
      ->required();
  optimize_cmd->add_option("--threads", optimize.threads,
                           "Worker count or max");

  DistortionFlags distortion;
  CLI::App* distortion_cmd = app.add_subcommand(
      "distortion", "Per-coordinate expected noise magnitude");
  distortion_cmd->add_flag("--table2", distortion.table2,
                           "Check the reference distortion values");
  distortion_cmd->add_option("--mechanism", distortion.mechanism,
                             "plrvo | gaussian");
  distortion_cmd->add_option("--k", distortion.k, "Gamma shape");
  distortion_cmd->add_option("--theta", distortion.theta, "Gamma scale");
  distortion_cmd->add_option("--sigma", distortion.sigma, "Noise multiplier");
  distortion_cmd->add_option("--clip", distortion.clip, "Clip C");
  distortion_cmd->add_flag("--quadrature", distortion.quadrature,
                           "Also integrate numerically");
  distortion_cmd->add_option("--format", distortion.format, "json | csv");

  SampleFlags sample;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Draw noise vectors");
  sample_cmd->add_option("--mechanism", sample.mechanism,
                         "plrvo | gaussian | laplace");
  sample_cmd->add_option("--k", sample.k, "Gamma shape");
  sample_cmd->add_option("--theta", sample.theta, "Gamma scale");
  sample_cmd->add_option("--sigma", sample.sigma, "Noise multiplier");
  sample_cmd->add_option("--clip", sample.clip, "Clip C (gaussian)");
  sample_cmd->add_option("--b", sample.b, "Laplace scale");
  sample_cmd->add_option("--n", sample.n, "Coordinates per draw");
  sample_cmd->add_option("--draws", sample.draws, "Number of draws");
  sample_cmd->add_option("--seed", sample.seed, "Generator seed");
  sample_cmd->add_option("--stream", sample.stream, "Generator stream id");
  sample_cmd->add_option("--out", sample.out_path, "CSV path (default stdout)");
  sample_cmd->add_flag("--secure", sample.secure,
                       "Use std::random_device (not reproducible)");

  TrainFlags train;
  CLI::App* train_cmd =
      app.add_subcommand("train-demo", "Toy DP-SGD logistic regression");
  train_cmd->add_option("--mechanism", train.mechanism,
                        "plrvo | gaussian | none");
  train_cmd->add_option("--epsilon", train.epsilon, "Target epsilon");
  train_cmd->add_option("--delta", train.delta, "Target delta");
  train_cmd->add_option("--epochs", train.epochs, "Epochs");
  train_cmd->add_option("--batch", train.batch, "Expected batch size");
  train_cmd->add_option("--clip", train.clip, "Clip C");
  train_cmd->add_option("--dim", train.dim, "Feature dimension");
  train_cmd->add_option("--seed", train.seed, "Seed");
  train_cmd->add_option("--lr", train.learning_rate, "Learning rate");
  train_cmd->add_option("--examples", train.examples, "Training examples");
  train_cmd->add_option("--test-examples", train.test_examples,
                        "Held-out examples");
  train_cmd->add_option("--separation", train.separation,
                        "Distance between blob means");
  train_cmd->add_option("--sigma", train.sigma, "Explicit noise multiplier");
  train_cmd->add_option("--k", train.k, "Explicit Gamma shape");
  train_cmd->add_option("--theta", train.theta, "Explicit Gamma scale");
  train_cmd->add_option("--out", train.out_path, "Ledger path (default stdout)");
  train_cmd->add_option("--threads", train.threads, "Worker count or max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Io io{out, err};
  int code = kExitOk;
  absl::Status status;
  if (account_cmd->parsed()) {
    status = RunAccount(account, io);
  } else if (sweep_cmd->parsed()) {
    status = RunSweep(sweep, io);
  } else if (optimize_cmd->parsed()) {
    status = RunOptimize(optimize, io);
  } else if (distortion_cmd->parsed()) {
    status = RunDistortion(distortion, io, code);
  } else if (sample_cmd->parsed()) {
    status = RunSample(sample, io);
  } else if (train_cmd->parsed()) {
    status = RunTrain(train, io);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return code;
}

}  // namespace plrvo
