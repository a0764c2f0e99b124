// Copyright 2026 The ldp_relax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDP_RELAX_RANDOM_HPP_
#define LDP_RELAX_RANDOM_HPP_

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace ldp_relax {

// Any 64-bit uniform random bit generator can drive the samplers.
template <typename G>
concept RandomStream =
    std::uniform_random_bit_generator<std::remove_cvref_t<G>> &&
    std::same_as<typename std::remove_cvref_t<G>::result_type, std::uint64_t>;

namespace internal {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace internal

// Counter-based stream: the n-th output is Mix64(key + (n+1) * golden).
// Streams are addressed by (master seed, ids...), so the draws seen by one
// simulated object never depend on how work is scheduled across threads.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t key) : key_(key) {}

  // Derives an independent stream for the given coordinates.
  static StreamRng ForStream(std::uint64_t master_seed,
                             std::initializer_list<std::uint64_t> ids) {
    std::uint64_t key = internal::Mix64(master_seed ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t id : ids) {
      key = internal::Mix64(key + internal::kGolden * (id + 1));
    }
    return StreamRng(key);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return internal::Mix64(key_ + counter_ * internal::kGolden);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Uniform double in [0, 1) from the top 53 bits of one draw.
template <RandomStream G>
double UniformUnit(G& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; n > 0.
template <RandomStream G>
std::uint64_t UniformIndex(G& rng, std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % n;
}

}  // namespace ldp_relax

#endif  // LDP_RELAX_RANDOM_HPP_
