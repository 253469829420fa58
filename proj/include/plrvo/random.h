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

#ifndef PLRVO_RANDOM_H_
#define PLRVO_RANDOM_H_

#include <cstdint>
#include <limits>
#include <random>

namespace plrvo {

// xoshiro256** seeded from (seed, stream) through splitmix64. The integer
// sequence is fully specified, so draws are reproducible across platforms.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

 private:
  std::uint64_t s_[4];
};

// 64-bit draws from std::random_device. Not reproducible; intended for
// releasing noise, never for tests.
class SecureRandom {
 public:
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() {
    return (static_cast<std::uint64_t>(device_()) << 32) ^ device_();
  }

 private:
  std::random_device device_;
};

// Uniform on the open interval (0, 1): the top 52 bits plus half a step.
// With 53 bits the largest value would round up to 1.
template <typename Rng>
double UniformOpen01(Rng& rng) {
  static_assert(Rng::max() == std::numeric_limits<std::uint64_t>::max() &&
                    Rng::min() == 0,
                "generator must produce full 64-bit words");
  return (static_cast<double>(rng() >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace plrvo

#endif  // PLRVO_RANDOM_H_
