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

#include "parbasis/rng.h"

#include <algorithm>

namespace parbasis {

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, then one SplitMix64 step over the combination.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  SplitMix64 mixer(seed ^ (h * 0x9e3779b97f4a7c15ULL));
  return mixer();
}

std::vector<ElementId> PermutationSource::prefix(std::uint64_t seed,
                                                 std::size_t k) {
  std::vector<ElementId> out;
  out.reserve(std::min(k, scratch_.size()));
  Walker walker(*this, seed);
  while (out.size() < k && !walker.done()) out.push_back(walker.next());
  return out;
}

PermutationSource::Walker::Walker(PermutationSource& source,
                                  std::uint64_t seed)
    : source_(source), rng_(seed) {}

PermutationSource::Walker::~Walker() {
  auto& s = source_.scratch_;
  for (std::size_t j = swaps_.size(); j-- > 0;) std::swap(s[j], s[swaps_[j]]);
}

ElementId PermutationSource::Walker::next() {
  auto& s = source_.scratch_;
  std::uniform_int_distribution<std::size_t> pick(position_, s.size() - 1);
  const std::size_t r = pick(rng_);
  std::swap(s[position_], s[r]);
  swaps_.push_back(r);
  return s[position_++];
}

ElementSet random_subset(std::span<const ElementId> pool, std::size_t k,
                         Rng& rng) {
  PermutationSource source(pool);
  return make_set(source.prefix(rng(), k));
}

}  // namespace parbasis
