// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARBASIS_RNG_H_
#define PARBASIS_RNG_H_

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "parbasis/types.h"

namespace parbasis {

using Rng = std::mt19937_64;

// Small generator used for the many short per-permutation streams, where
// seeding a Mersenne twister would dominate the cost.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label);

// Deterministic random orderings of a fixed pool, generated lazily by a
// Fisher-Yates shuffle on a private copy of the pool. Producing a prefix of
// length k costs O(k); the copy is restored afterwards.
class PermutationSource {
 public:
  explicit PermutationSource(std::span<const ElementId> pool)
      : scratch_(pool.begin(), pool.end()) {}

  std::size_t pool_size() const { return scratch_.size(); }

  // First k elements of the permutation identified by `seed`.
  std::vector<ElementId> prefix(std::uint64_t seed, std::size_t k);

  // Walks the permutation identified by `seed` one element at a time.
  class Walker {
   public:
    Walker(PermutationSource& source, std::uint64_t seed);
    ~Walker();
    Walker(const Walker&) = delete;
    Walker& operator=(const Walker&) = delete;
    bool done() const { return position_ == source_.scratch_.size(); }
    std::size_t position() const { return position_; }
    ElementId next();

   private:
    PermutationSource& source_;
    SplitMix64 rng_;
    std::size_t position_ = 0;
    std::vector<std::size_t> swaps_;
  };

 private:
  std::vector<ElementId> scratch_;
};

// Uniformly random k-subset of `pool`, sorted.
ElementSet random_subset(std::span<const ElementId> pool, std::size_t k,
                         Rng& rng);

}  // namespace parbasis

#endif  // PARBASIS_RNG_H_
