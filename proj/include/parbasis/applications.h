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

// Random feasible sequences: a_1, ..., a_r where each a_i is uniform among
// the elements that keep {a_1, ..., a_i} independent.

#ifndef PARBASIS_APPLICATIONS_H_
#define PARBASIS_APPLICATIONS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "parbasis/algorithms.h"
#include "parbasis/types.h"
#include "parbasis/view.h"

namespace parbasis {

using BasisFinder =
    std::function<RunResult(const MatroidView& view, std::uint64_t seed)>;

struct FeasibleSequence {
  std::vector<ElementId> elements;
  std::vector<ElementId> permutation;
  // Rank-of-prefix computations run side by side: the parallel cost is the
  // largest round count, the sequential cost their sum.
  std::size_t rounds_parallel = 0;
  std::size_t rounds_sequential = 0;
  std::size_t total_queries = 0;
};

// Prefixes up to this size are ranked with the exact greedy scan.
inline constexpr std::size_t kExactPrefixRankLimit = 512;

// Draws a uniform ordering e_1..e_n of the live set, computes
// r_j = rank(e_1..e_j) for every j and keeps the e_j with r_j > r_{j-1}.
// `finder` ranks prefixes when n exceeds kExactPrefixRankLimit. Throws
// DomainError on an empty view.
FeasibleSequence random_feasible_sequence(const MatroidView& view,
                                          const BasisFinder& finder,
                                          std::uint64_t seed);

// Every prefix of `sequence` is independent in `view`.
bool is_feasible_sequence(const MatroidView& view,
                          const std::vector<ElementId>& sequence);

}  // namespace parbasis

#endif  // PARBASIS_APPLICATIONS_H_
