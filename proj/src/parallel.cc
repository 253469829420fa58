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

#include "plrvo/parallel.h"

#include <algorithm>
#include <atomic>
#include <thread>

namespace plrvo {

int ResolveThreads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void ParallelFor(std::int64_t count, const std::function<void(std::int64_t)>& fn,
                 const ExecutionOptions& options) {
  const int workers =
      static_cast<int>(std::min<std::int64_t>(ResolveThreads(options.threads), count));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t i = next++; i < count; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

std::vector<double> DeterministicBlockSum(
    std::int64_t first, std::int64_t last, std::size_t width,
    std::int64_t block_size,
    const std::function<void(std::int64_t, std::int64_t, std::span<double>)>&
        block,
    const ExecutionOptions& options) {
  if (last < first) return std::vector<double>(width, 0.0);
  const std::int64_t count = last - first + 1;
  const std::int64_t blocks = (count + block_size - 1) / block_size;
  std::vector<double> partials(static_cast<std::size_t>(blocks) * width, 0.0);
  ParallelFor(
      blocks,
      [&](std::int64_t b) {
        const std::int64_t begin = first + b * block_size;
        const std::int64_t end = std::min(last, begin + block_size - 1);
        block(begin, end,
              std::span<double>(partials.data() + b * width, width));
      },
      options);

  // Pairwise tree: at each level slot i absorbs slot i + stride.
  for (std::int64_t stride = 1; stride < blocks; stride *= 2) {
    for (std::int64_t i = 0; i + stride < blocks; i += 2 * stride) {
      double* dst = partials.data() + i * width;
      const double* src = partials.data() + (i + stride) * width;
      for (std::size_t w = 0; w < width; ++w) dst[w] += src[w];
    }
  }
  partials.resize(width);
  return partials;
}

}  // namespace plrvo
