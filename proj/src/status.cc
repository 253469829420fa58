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

#include "plrvo/status.h"

#include <string>

#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace plrvo {
namespace {

constexpr char kKindUrl[] = "type.plrvo/error_kind";
constexpr char kLambdaUrl[] = "type.plrvo/max_admissible_lambda";

absl::Status WithKind(absl::Status status, ErrorKind kind) {
  status.SetPayload(kKindUrl,
                    absl::Cord(absl::StrCat(static_cast<int>(kind))));
  return status;
}

}  // namespace

absl::Status DomainError(absl::string_view message) {
  return WithKind(absl::OutOfRangeError(message), ErrorKind::kDomain);
}

absl::Status NonConvergenceError(absl::string_view message) {
  return WithKind(absl::OutOfRangeError(message), ErrorKind::kNonConvergence);
}

absl::Status NegativeDiscriminantError(absl::string_view message) {
  return WithKind(absl::OutOfRangeError(message),
                  ErrorKind::kNegativeDiscriminant);
}

absl::Status InfeasibleError(absl::string_view message) {
  return WithKind(absl::FailedPreconditionError(message),
                  ErrorKind::kInfeasible);
}

absl::Status MgfDomainViolation(long max_admissible_lambda,
                                absl::string_view message) {
  absl::Status status = WithKind(
      absl::OutOfRangeError(absl::StrCat(
          message, " (maximal admissible lambda_max = ", max_admissible_lambda,
          ")")),
      ErrorKind::kMgfDomainViolation);
  status.SetPayload(kLambdaUrl,
                    absl::Cord(absl::StrCat(max_admissible_lambda)));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kKindUrl);
  if (!payload.has_value()) return std::nullopt;
  int value = 0;
  if (!absl::SimpleAtoi(std::string(*payload), &value)) return std::nullopt;
  return static_cast<ErrorKind>(value);
}

std::optional<long> GetMaxAdmissibleLambda(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kLambdaUrl);
  if (!payload.has_value()) return std::nullopt;
  long value = 0;
  if (!absl::SimpleAtoi(std::string(*payload), &value)) return std::nullopt;
  return value;
}

}  // namespace plrvo
