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

#include "parbasis/applications.h"

#include <algorithm>
#include <string>

#include "parbasis/rng.h"

namespace parbasis {

FeasibleSequence random_feasible_sequence(const MatroidView& view,
                                          const BasisFinder& finder,
                                          std::uint64_t seed) {
  const std::size_t n = view.live_size();
  if (n == 0) throw DomainError("random feasible sequence of an empty matroid");
  FeasibleSequence out;
  PermutationSource source(view.live());
  out.permutation = source.prefix(mix_seed(seed, "sequence"), n);
  std::vector<std::size_t> ranks(n + 1, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    const MatroidView prefix_view = view.restricted_to(
        make_set({out.permutation.begin(),
                  out.permutation.begin() + static_cast<std::ptrdiff_t>(j)}));
    const std::uint64_t run_seed = mix_seed(seed, "prefix:" + std::to_string(j));
    const RunResult run = n <= kExactPrefixRankLimit
                              ? greedy_basis_run(prefix_view, run_seed)
                              : finder(prefix_view, run_seed);
    ranks[j] = run.basis.size();
    out.rounds_parallel = std::max(out.rounds_parallel, run.ledger.rounds);
    out.rounds_sequential += run.ledger.rounds;
    out.total_queries += run.ledger.total_queries;
  }
  for (std::size_t j = 1; j <= n; ++j) {
    if (ranks[j] > ranks[j - 1]) out.elements.push_back(out.permutation[j - 1]);
  }
  return out;
}

bool is_feasible_sequence(const MatroidView& view,
                          const std::vector<ElementId>& sequence) {
  auto state = view.new_state();
  std::vector<char> seen(view.universe(), 0);
  for (ElementId e : sequence) {
    if (!view.is_live(e) || seen[e] || !state->can_add(e)) return false;
    seen[e] = 1;
    state->add(e);
  }
  return true;
}

}  // namespace parbasis
