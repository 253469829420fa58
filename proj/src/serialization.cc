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

#include "plrvo/serialization.h"

#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "plrvo/status.h"

namespace plrvo {
namespace {

absl::Status RejectUnknownKeys(const Json& object, const std::string& where,
                               const std::set<std::string>& allowed) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", where, "' must be a JSON object"));
  }
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown key '", key, "' in '", where, "' (allowed: ",
          absl::StrJoin(allowed, ", "), ")"));
    }
  }
  return absl::OkStatus();
}

absl::Status RequireKeys(const Json& object, const std::string& where,
                         const std::set<std::string>& required) {
  for (const std::string& key : required) {
    if (!object.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("missing key '", key, "' in '", where, "'"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> GetDouble(const Json& object, const std::string& key,
                                 const std::string& where) {
  return ParseJsonNumber(object.at(key), absl::StrCat(where, ".", key));
}

absl::StatusOr<std::int64_t> GetInteger(const Json& object,
                                        const std::string& key,
                                        const std::string& where) {
  const Json& value = object.at(key);
  const std::string field = absl::StrCat(where, ".", key);
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_float()) {
    const double d = value.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  return absl::InvalidArgumentError(
      absl::StrCat("'", field, "' must be an integer"));
}

absl::StatusOr<bool> GetBool(const Json& object, const std::string& key,
                             const std::string& where) {
  const Json& value = object.at(key);
  if (!value.is_boolean()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", where, ".", key, "' must be a boolean"));
  }
  return value.get<bool>();
}

Json ParamsJson(const std::map<std::string, double>& params) {
  Json out = Json::object();
  for (const auto& [key, value] : params) out[key] = JsonNumber(value);
  return out;
}

}  // namespace

Json JsonNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

absl::StatusOr<double> ParseJsonNumber(const Json& value,
                                       const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "inf" || s == "Infinity") {
      return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf" || s == "-Infinity") {
      return -std::numeric_limits<double>::infinity();
    }
  }
  return absl::InvalidArgumentError(
      absl::StrCat("'", field, "' must be a number"));
}

std::string FormatDouble(double value) {
  char buffer[32];
  const std::to_chars_result r =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, r.ptr);
}

absl::StatusOr<Mechanism> MechanismFromJson(const std::string& name,
                                            const Json& params) {
  if (name == "plrvo") {
    PLRVO_RETURN_IF_ERROR(RejectUnknownKeys(params, "params", {"k", "theta"}));
    PLRVO_RETURN_IF_ERROR(RequireKeys(params, "params", {"k", "theta"}));
    PLRVO_ASSIGN_OR_RETURN(double k, GetDouble(params, "k", "params"));
    PLRVO_ASSIGN_OR_RETURN(double theta, GetDouble(params, "theta", "params"));
    PLRVO_ASSIGN_OR_RETURN(GammaPlrvParams p, GammaPlrvParams::Create(k, theta));
    return Mechanism(p);
  }
  if (name == "gaussian") {
    PLRVO_RETURN_IF_ERROR(RejectUnknownKeys(params, "params", {"sigma"}));
    PLRVO_RETURN_IF_ERROR(RequireKeys(params, "params", {"sigma"}));
    PLRVO_ASSIGN_OR_RETURN(double sigma, GetDouble(params, "sigma", "params"));
    PLRVO_ASSIGN_OR_RETURN(GaussianParams p, GaussianParams::Create(sigma));
    return Mechanism(p);
  }
  if (name == "laplace") {
    PLRVO_RETURN_IF_ERROR(RejectUnknownKeys(params, "params", {"b"}));
    PLRVO_RETURN_IF_ERROR(RequireKeys(params, "params", {"b"}));
    PLRVO_ASSIGN_OR_RETURN(double b, GetDouble(params, "b", "params"));
    PLRVO_ASSIGN_OR_RETURN(LaplaceParams p, LaplaceParams::Create(b));
    return Mechanism(p);
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mechanism '", name, "' (expected plrvo, gaussian or laplace)"));
}

absl::StatusOr<JobFile> ParseJobFile(const Json& document) {
  PLRVO_RETURN_IF_ERROR(RejectUnknownKeys(
      document, "job file",
      {"mechanism", "params", "job", "target", "optimizer"}));
  PLRVO_RETURN_IF_ERROR(RequireKeys(document, "job file", {"mechanism", "job"}));
  JobFile file;
  if (!document.at("mechanism").is_string()) {
    return absl::InvalidArgumentError("'mechanism' must be a string");
  }
  file.mechanism_name = document.at("mechanism").get<std::string>();
  if (document.contains("params")) {
    PLRVO_ASSIGN_OR_RETURN(
        file.mechanism,
        MechanismFromJson(file.mechanism_name, document.at("params")));
  } else if (file.mechanism_name != "plrvo" &&
             file.mechanism_name != "gaussian" &&
             file.mechanism_name != "laplace") {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown mechanism '", file.mechanism_name, "'"));
  }

  const Json& job = document.at("job");
  PLRVO_RETURN_IF_ERROR(RejectUnknownKeys(
      job, "job",
      {"steps_T", "sampling_rate_zeta", "model_dim_N", "clip_C", "delta",
       "lambda_max"}));
  PLRVO_RETURN_IF_ERROR(RequireKeys(
      job, "job", {"steps_T", "sampling_rate_zeta", "model_dim_N", "delta"}));
  PLRVO_ASSIGN_OR_RETURN(file.job.steps_T, GetInteger(job, "steps_T", "job"));
  PLRVO_ASSIGN_OR_RETURN(file.job.sampling_rate_zeta,
                         GetDouble(job, "sampling_rate_zeta", "job"));
  PLRVO_ASSIGN_OR_RETURN(file.job.model_dim_N,
                         GetInteger(job, "model_dim_N", "job"));
  PLRVO_ASSIGN_OR_RETURN(file.job.delta, GetDouble(job, "delta", "job"));
  if (job.contains("clip_C")) {
    PLRVO_ASSIGN_OR_RETURN(file.job.clip_C, GetDouble(job, "clip_C", "job"));
  }
  if (job.contains("lambda_max")) {
    PLRVO_ASSIGN_OR_RETURN(std::int64_t l, GetInteger(job, "lambda_max", "job"));
    if (l < 1 || l > std::numeric_limits<int>::max()) {
      return absl::InvalidArgumentError("'job.lambda_max' must be >= 1");
    }
    file.job.lambda_max = static_cast<int>(l);
  }

  if (document.contains("target")) {
    const Json& target = document.at("target");
    PLRVO_RETURN_IF_ERROR(
        RejectUnknownKeys(target, "target", {"epsilon_star", "delta_star"}));
    PLRVO_RETURN_IF_ERROR(
        RequireKeys(target, "target", {"epsilon_star", "delta_star"}));
    PLRVO_ASSIGN_OR_RETURN(double eps,
                           GetDouble(target, "epsilon_star", "target"));
    PLRVO_ASSIGN_OR_RETURN(double delta,
                           GetDouble(target, "delta_star", "target"));
    PLRVO_ASSIGN_OR_RETURN(file.target, PrivacyTarget::Create(eps, delta));
  }
  if (document.contains("optimizer")) {
    file.optimizer = document.at("optimizer");
    PLRVO_RETURN_IF_ERROR(RejectUnknownKeys(
        file.optimizer, "optimizer",
        {"clip_min", "clip_max", "gamma_cdf_tol", "distortion_cap",
         "scale_cap", "k_points", "theta_points", "clip_points", "k_min",
         "k_max", "theta_min", "use_k_bounds_prefilter"}));
  }
  return file;
}

absl::StatusOr<JobFile> ParseJobFileText(const std::string& text) {
  Json document = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (document.is_discarded()) {
    return absl::InvalidArgumentError("job file is not valid JSON");
  }
  return ParseJobFile(document);
}

absl::StatusOr<AccountingJob> ResolveJob(const JobFile& file) {
  if (!file.mechanism.has_value()) {
    return absl::InvalidArgumentError("job file has no 'params'");
  }
  if (!file.job.clip_C.has_value()) {
    return absl::InvalidArgumentError("missing key 'clip_C' in 'job'");
  }
  int lambda_max = 0;
  if (file.job.lambda_max.has_value()) {
    lambda_max = *file.job.lambda_max;
  } else {
    PLRVO_ASSIGN_OR_RETURN(lambda_max,
                           DefaultLambdaMax(*file.mechanism, *file.job.clip_C));
  }
  return AccountingJob::Create(file.job.steps_T, file.job.sampling_rate_zeta,
                               file.job.model_dim_N, *file.job.clip_C,
                               file.job.delta, lambda_max);
}

absl::StatusOr<FeasibilityConfig> ResolveFeasibilityConfig(
    const JobFile& file) {
  if (file.mechanism_name != "plrvo") {
    return absl::InvalidArgumentError(
        "optimization is defined for the plrvo mechanism only");
  }
  if (!file.target.has_value()) {
    return absl::InvalidArgumentError("optimization requires a 'target'");
  }
  FeasibilityConfig cfg;
  cfg.target = *file.target;
  cfg.steps_T = file.job.steps_T;
  cfg.sampling_rate_zeta = file.job.sampling_rate_zeta;
  cfg.model_dim_N = file.job.model_dim_N;
  cfg.lambda_max = file.job.lambda_max.value_or(kDefaultLambdaMax);
  const Json& opt = file.optimizer;
  const std::string where = "optimizer";
  if (opt.contains("clip_min")) {
    PLRVO_ASSIGN_OR_RETURN(cfg.clip_min, GetDouble(opt, "clip_min", where));
  } else if (file.job.clip_C.has_value()) {
    cfg.clip_min = *file.job.clip_C;
  } else {
    return absl::InvalidArgumentError(
        "optimizer.clip_min (or job.clip_C) is required");
  }
  if (opt.contains("clip_max")) {
    PLRVO_ASSIGN_OR_RETURN(cfg.clip_max, GetDouble(opt, "clip_max", where));
  } else {
    cfg.clip_max = 2.0 * cfg.clip_min;
  }
  for (const auto& [key, field] :
       std::initializer_list<std::pair<const char*, double*>>{
           {"gamma_cdf_tol", &cfg.gamma_cdf_tol},
           {"distortion_cap", &cfg.distortion_cap},
           {"scale_cap", &cfg.scale_cap},
           {"k_min", &cfg.k_min},
           {"k_max", &cfg.k_max},
           {"theta_min", &cfg.theta_min}}) {
    if (opt.contains(key)) {
      PLRVO_ASSIGN_OR_RETURN(*field, GetDouble(opt, key, where));
    }
  }
  for (const auto& [key, field] :
       std::initializer_list<std::pair<const char*, int*>>{
           {"k_points", &cfg.k_points},
           {"theta_points", &cfg.theta_points},
           {"clip_points", &cfg.clip_points}}) {
    if (opt.contains(key)) {
      PLRVO_ASSIGN_OR_RETURN(std::int64_t v, GetInteger(opt, key, where));
      if (v < 1 || v > 100000) {
        return absl::InvalidArgumentError(
            absl::StrCat("'optimizer.", key, "' must lie in [1, 100000]"));
      }
      *field = static_cast<int>(v);
    }
  }
  if (opt.contains("use_k_bounds_prefilter")) {
    PLRVO_ASSIGN_OR_RETURN(cfg.use_k_bounds_prefilter,
                           GetBool(opt, "use_k_bounds_prefilter", where));
  }
  PLRVO_RETURN_IF_ERROR(ValidateConfig(cfg));
  return cfg;
}

Json ToJson(const Mechanism& mechanism) {
  Json out;
  out["mechanism"] = std::string(MechanismName(mechanism));
  if (const auto* p = std::get_if<GammaPlrvParams>(&mechanism)) {
    out["params"] = {{"k", p->k()}, {"theta", p->theta()}};
  } else if (const auto* p = std::get_if<GaussianParams>(&mechanism)) {
    out["params"] = {{"sigma", p->sigma()}};
  } else {
    out["params"] = {{"b", std::get<LaplaceParams>(mechanism).b()}};
  }
  return out;
}

Json ToJson(const AccountingJob& job) {
  return {{"steps_T", job.steps_T()},
          {"sampling_rate_zeta", job.sampling_rate_zeta()},
          {"model_dim_N", job.model_dim_N()},
          {"clip_C", job.clip_C()},
          {"delta", job.delta()},
          {"lambda_max", job.lambda_max()}};
}

Json ToJson(const PrivacyTarget& target) {
  return {{"epsilon_star", JsonNumber(target.epsilon_star())},
          {"delta_star", target.delta_star()}};
}

Json ToJson(const LogMomentCurve& curve) {
  const CurveMetadata& m = curve.metadata();
  Json out;
  out["mechanism"] = m.mechanism;
  out["params"] = ParamsJson(m.mechanism_params);
  out["composed_steps"] = m.composed_steps;
  if (m.job.has_value()) out["job"] = ToJson(*m.job);
  Json points = Json::array();
  for (const auto& [lambda, alpha] : curve.alpha()) {
    points.push_back({{"lambda", lambda}, {"alpha", JsonNumber(alpha)}});
  }
  out["alpha"] = std::move(points);
  return out;
}

Json ToJson(const AccountResult& result) {
  Json out;
  out["epsilon"] = JsonNumber(result.epsilon);
  out["argmin_lambda"] = result.argmin_lambda;
  out["per_step_alpha_at_argmin"] = JsonNumber(result.per_step_alpha_at_argmin);
  if (result.error_estimate.has_value()) {
    out["error_estimate"] = JsonNumber(*result.error_estimate);
  }
  return out;
}

Json ToJson(const DistortionReport& report) {
  return {{"mechanism", report.mechanism},
          {"l1_per_coord", JsonNumber(report.per_coordinate_l1)},
          {"finite", report.finite}};
}

Json ToJson(const ConstraintReport& report) {
  Json out = Json::object();
  for (const ConstraintCheck& check : report.checks) {
    out[check.name] = {{"pass", check.pass},
                       {"margin", JsonNumber(check.margin)}};
  }
  return out;
}

Json ToJson(const OptimizationResult& result) {
  return {{"k_star", result.k_star},
          {"theta_star", result.theta_star},
          {"C_star", result.clip_star},
          {"achieved_epsilon", JsonNumber(result.achieved_epsilon)},
          {"achieved_distortion", JsonNumber(result.achieved_distortion)},
          {"snr", result.snr},
          {"constraint_report", ToJson(result.constraint_report)},
          {"diagnostics",
           {{"grid_columns_searched", result.grid_columns_searched},
            {"accountant_evaluations", result.accountant_evaluations},
            {"refinement_rounds", result.refinement_rounds}}}};
}

Json ToJson(const FeasibilityConfig& cfg) {
  return {{"clip_min", cfg.clip_min},
          {"clip_max", cfg.clip_max},
          {"gamma_cdf_tol", cfg.gamma_cdf_tol},
          {"distortion_cap", cfg.distortion_cap},
          {"scale_cap", cfg.scale_cap},
          {"target", ToJson(cfg.target)},
          {"steps_T", cfg.steps_T},
          {"sampling_rate_zeta", cfg.sampling_rate_zeta},
          {"model_dim_N", cfg.model_dim_N},
          {"lambda_max", cfg.lambda_max},
          {"k_points", cfg.k_points},
          {"theta_points", cfg.theta_points},
          {"clip_points", cfg.clip_points},
          {"k_min", cfg.k_min},
          {"k_max", cfg.k_max},
          {"theta_min", cfg.theta_min},
          {"use_k_bounds_prefilter", cfg.use_k_bounds_prefilter}};
}

std::string CurveCsv(const LogMomentCurve& curve) {
  const double steps = static_cast<double>(curve.metadata().composed_steps);
  std::string out = "lambda,alpha_per_step\n";
  for (const auto& [lambda, alpha] : curve.alpha()) {
    absl::StrAppend(&out, lambda, ",",
                    FormatDouble(steps == 1.0 ? alpha : alpha / steps), "\n");
  }
  return out;
}

std::string DistortionCsvHeader() { return "mechanism,l1_per_coord,finite\n"; }

std::string DistortionCsvRow(const DistortionReport& report) {
  return absl::StrCat(report.mechanism, ",",
                      FormatDouble(report.per_coordinate_l1), ",",
                      report.finite ? "true" : "false", "\n");
}

std::string SampleCsvHeader(std::int64_t n) {
  std::string out = "draw_index,scale_b";
  for (std::int64_t i = 0; i < n; ++i) absl::StrAppend(&out, ",coord_", i);
  out += "\n";
  return out;
}

std::string SampleCsvRow(std::int64_t draw_index, const NoiseDraw& draw) {
  std::string out = absl::StrCat(draw_index, ",", FormatDouble(draw.scale_b));
  for (Eigen::Index i = 0; i < draw.coords.size(); ++i) {
    absl::StrAppend(&out, ",", FormatDouble(draw.coords[i]));
  }
  out += "\n";
  return out;
}

}  // namespace plrvo
