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

#include "plrvo/majorization.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "absl/strings/str_cat.h"
#include "plrvo/status.h"

namespace plrvo {
namespace {

constexpr double kCancellationSafeIndex = 1e4;
constexpr double kMajorizationSlack = 1e-12;

}  // namespace

absl::StatusOr<MajorizationSet> MajorizationSet::Create(double clip_C,
                                                        std::int64_t dim_n) {
  if (!(clip_C > 0.0) || !std::isfinite(clip_C)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip_C must be > 0, got ", clip_C));
  }
  if (dim_n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dim_n must be >= 1, got ", dim_n));
  }
  return MajorizationSet(clip_C, dim_n);
}

double MajorizationSet::CoordinateAt(double clip_C, double s) {
  if (s > kCancellationSafeIndex) {
    return clip_C / (std::sqrt(s) + std::sqrt(s - 1.0));
  }
  return clip_C * (std::sqrt(s) - std::sqrt(s - 1.0));
}

absl::StatusOr<double> MajorizationSet::coordinate(std::int64_t i) const {
  if (i < 1 || i > dim_n_) {
    return absl::OutOfRangeError(absl::StrCat(
        "majorization index ", i, " outside [1, ", dim_n_, "]"));
  }
  return CoordinateAt(clip_C_, static_cast<double>(i));
}

absl::StatusOr<bool> WeaklyMajorizes(
    const MajorizationSet& set, const Eigen::Ref<const Eigen::VectorXd>& g) {
  if (g.size() != set.dim_n()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "vector length ", g.size(), " != majorization dimension ",
        set.dim_n()));
  }
  std::vector<double> sorted(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) sorted[i] = std::fabs(g[i]);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double partial = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    partial += sorted[i];
    const double bound = set.clip_C() * std::sqrt(static_cast<double>(i + 1));
    if (partial > bound + kMajorizationSlack) return false;
  }
  return true;
}

}  // namespace plrvo
