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

#ifndef PLRVO_PARALLEL_H_
#define PLRVO_PARALLEL_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace plrvo {

struct ExecutionOptions {
  // Worker threads; <= 0 means std::thread::hardware_concurrency().
  int threads = 1;
};

int ResolveThreads(int requested);

// Sums per-index contributions over [first, last] (inclusive) into a vector
// of `width` accumulators. The range is cut into fixed blocks of
// `block_size` indices, `block` fills one block's partial sums sequentially,
// and block partials are combined by a balanced pairwise tree over block
// ids. Neither the blocks nor the tree depend on the thread count, so the
// result is bitwise identical for any number of workers.
std::vector<double> DeterministicBlockSum(
    std::int64_t first, std::int64_t last, std::size_t width,
    std::int64_t block_size,
    const std::function<void(std::int64_t begin, std::int64_t end,
                             std::span<double> partial)>& block,
    const ExecutionOptions& options);

// Runs fn(i) for i in [0, count) on up to `threads` workers. fn must only
// write to slot i of caller-owned storage.
void ParallelFor(std::int64_t count, const std::function<void(std::int64_t)>& fn,
                 const ExecutionOptions& options);

}  // namespace plrvo

#endif  // PLRVO_PARALLEL_H_
