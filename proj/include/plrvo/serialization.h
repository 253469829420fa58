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

#ifndef PLRVO_SERIALIZATION_H_
#define PLRVO_SERIALIZATION_H_

#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "plrvo/accountant.h"
#include "plrvo/distortion.h"
#include "plrvo/dpsgd.h"
#include "plrvo/optimizer.h"
#include "plrvo/params.h"
#include "plrvo/sampler.h"

namespace plrvo {

// nlohmann::json keeps object keys in a std::map, so dumps are key-sorted.
using Json = nlohmann::json;

// Finite values as numbers; +-inf and NaN as the strings "inf", "-inf",
// "nan" (JSON has no literal for them).
Json JsonNumber(double value);
// Accepts a number, "inf" or "-inf"; NaN is rejected.
absl::StatusOr<double> ParseJsonNumber(const Json& value,
                                       const std::string& field);

// Shortest text that parses back to the same double.
std::string FormatDouble(double value);

// Contents of a job file: mechanism, params, job, optional target and
// optional optimizer section. Unknown keys anywhere are rejected.
struct JobSpec {
  std::int64_t steps_T = 1;
  double sampling_rate_zeta = 0.0;
  std::int64_t model_dim_N = 1;
  std::optional<double> clip_C;
  double delta = 1e-5;
  std::optional<int> lambda_max;
};

struct JobFile {
  std::string mechanism_name;
  std::optional<Mechanism> mechanism;  // absent when params were omitted
  JobSpec job;
  std::optional<PrivacyTarget> target;
  Json optimizer = Json::object();
};

absl::StatusOr<JobFile> ParseJobFile(const Json& document);
absl::StatusOr<JobFile> ParseJobFileText(const std::string& text);

// Builds the AccountingJob. Without an explicit lambda_max the default is
// min(4096, floor(1 / (C theta)) - 1) for the Gamma seed and 64 otherwise.
absl::StatusOr<AccountingJob> ResolveJob(const JobFile& file);

// FeasibilityConfig from the optimizer section, job skeleton and target.
absl::StatusOr<FeasibilityConfig> ResolveFeasibilityConfig(
    const JobFile& file);

absl::StatusOr<Mechanism> MechanismFromJson(const std::string& name,
                                            const Json& params);
Json ToJson(const Mechanism& mechanism);
Json ToJson(const AccountingJob& job);
Json ToJson(const PrivacyTarget& target);
Json ToJson(const LogMomentCurve& curve);
Json ToJson(const AccountResult& result);
Json ToJson(const DistortionReport& report);
Json ToJson(const ConstraintReport& report);
Json ToJson(const OptimizationResult& result);
Json ToJson(const FeasibilityConfig& cfg);

// "lambda,alpha_per_step" then one row per order. Composed curves are
// written divided back to per-step values.
std::string CurveCsv(const LogMomentCurve& curve);
std::string DistortionCsvHeader();
std::string DistortionCsvRow(const DistortionReport& report);
// "draw_index,scale_b,coord_0,...,coord_{n-1}".
std::string SampleCsvHeader(std::int64_t n);
std::string SampleCsvRow(std::int64_t draw_index, const NoiseDraw& draw);

}  // namespace plrvo

#endif  // PLRVO_SERIALIZATION_H_
