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

#ifndef PLRVO_STATUS_H_
#define PLRVO_STATUS_H_

#include <optional>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"

namespace plrvo {

// Error vocabulary. Every failure is an absl::Status; the kind below is
// attached as a payload so callers (notably the CLI) can map it to an exit
// code without parsing messages.
//
//   kDomain              absl::StatusCode::kOutOfRange
//   kMgfDomainViolation  absl::StatusCode::kOutOfRange, carries max lambda
//   kNegativeDiscriminant absl::StatusCode::kOutOfRange
//   kNonConvergence      absl::StatusCode::kOutOfRange
//   kInfeasible          absl::StatusCode::kFailedPrecondition
//   invalid input        absl::StatusCode::kInvalidArgument (no payload)
enum class ErrorKind {
  kDomain,
  kMgfDomainViolation,
  kNegativeDiscriminant,
  kNonConvergence,
  kInfeasible,
};

absl::Status DomainError(absl::string_view message);
absl::Status NonConvergenceError(absl::string_view message);
absl::Status NegativeDiscriminantError(absl::string_view message);
absl::Status InfeasibleError(absl::string_view message);

// `max_admissible_lambda` is the largest moment order the Gamma seed's MGF
// supports for the offending clip and scale; it may be < 1 when none does.
absl::Status MgfDomainViolation(long max_admissible_lambda,
                                absl::string_view message);

std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

// Present only on MgfDomainViolation statuses.
std::optional<long> GetMaxAdmissibleLambda(const absl::Status& status);

}  // namespace plrvo

#define PLRVO_RETURN_IF_ERROR(expr)      \
  do {                                   \
    absl::Status plrvo_status_ = (expr); \
    if (!plrvo_status_.ok()) return plrvo_status_; \
  } while (0)

#define PLRVO_CONCAT_INNER_(a, b) a##b
#define PLRVO_CONCAT_(a, b) PLRVO_CONCAT_INNER_(a, b)
#define PLRVO_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                 \
  if (!tmp.ok()) return tmp.status();                \
  lhs = std::move(*tmp)
#define PLRVO_ASSIGN_OR_RETURN(lhs, expr) \
  PLRVO_ASSIGN_OR_RETURN_IMPL_(PLRVO_CONCAT_(plrvo_statusor_, __LINE__), lhs, expr)

#endif  // PLRVO_STATUS_H_
