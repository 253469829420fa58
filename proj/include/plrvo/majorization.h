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

#ifndef PLRVO_MAJORIZATION_H_
#define PLRVO_MAJORIZATION_H_

#include <cstdint>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace plrvo {

// The vector x_i = C (sqrt(i) - sqrt(i - 1)), i = 1..n, which weakly
// majorizes the absolute coordinates of every vector in the C-radius l2
// ball. Coordinates are produced on demand; n may be ~1e8.
//
// Partial sums telescope: x_1 + ... + x_i = C sqrt(i).
class MajorizationSet {
 public:
  static absl::StatusOr<MajorizationSet> Create(double clip_C,
                                                std::int64_t dim_n);

  double clip_C() const { return clip_C_; }
  std::int64_t dim_n() const { return dim_n_; }

  // 1-based, checked.
  absl::StatusOr<double> coordinate(std::int64_t i) const;

  // Unchecked; i is treated as a real index s >= 1 so that callers may
  // integrate over the index.
  static double CoordinateAt(double clip_C, double s);

 private:
  MajorizationSet(double clip_C, std::int64_t dim_n)
      : clip_C_(clip_C), dim_n_(dim_n) {}
  double clip_C_;
  std::int64_t dim_n_;
};

// True iff the sorted partial sums of |g| never exceed C sqrt(i) (+1e-12).
// g.size() must equal set.dim_n().
absl::StatusOr<bool> WeaklyMajorizes(const MajorizationSet& set,
                                     const Eigen::Ref<const Eigen::VectorXd>& g);

}  // namespace plrvo

#endif  // PLRVO_MAJORIZATION_H_
