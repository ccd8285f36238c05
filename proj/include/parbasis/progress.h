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

// Progress steps on a peeled set S: contracting a large independent set of
// the whole matroid, or deleting elements of S that are spanned by the rest
// of S.

#ifndef PARBASIS_PROGRESS_H_
#define PARBASIS_PROGRESS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parbasis/config.h"
#include "parbasis/estimators.h"
#include "parbasis/scheduler.h"
#include "parbasis/types.h"
#include "parbasis/view.h"

namespace parbasis {

// max(1, floor(alpha n / (20 |S|))), or n when alpha is the sentinel.
std::size_t contraction_length(std::size_t n, std::size_t set_size,
                               const AlphaEstimate& alpha);

// One round over k_c uniform orderings of the live ground set (n = live
// size). Returns an independent set of at least `length` elements, or throws
// ContractionFailed.
ElementSet contract_independent(Scheduler& sched, const MatroidView& view,
                                std::size_t length,
                                const AlgorithmConfig& config);

// Retries with half the length after each failure (one round per attempt)
// down to length 1.
ElementSet contract_with_retry(Scheduler& sched, const MatroidView& view,
                               std::size_t length,
                               const AlgorithmConfig& config);

enum class DeletionMethod { kRedundantRecovery, kCoreRecovery, kNonCoreMass, kShortCircuit };
std::string to_string(DeletionMethod m);

struct DeletionResult {
  ElementSet deleted;
  ElementSet kept_witness;
  DeletionMethod method = DeletionMethod::kRedundantRecovery;
  std::size_t rounds_charged = 0;
};

// Ordering length t = ceil(c_t log2(n) alpha) and probe count
// l = floor(|S| / (4t)) of the redundant-element recovery.
struct RecoveryShape {
  std::size_t t = 0;
  std::size_t probes = 0;
};
RecoveryShape recovery_shape(std::size_t set_size, const AlphaEstimate& alpha,
                             std::size_t ambient_n,
                             const AlgorithmConfig& config);

struct RecoveryRequest {
  const MatroidView* view = nullptr;
  ElementSet set;
  AlphaEstimate alpha;
};

// Redundant-element recovery for several disjoint sets, all probes sharing
// rounds (one round unless the budget forces a split). Draws l orderings A_i
// of the first t elements of a uniform ordering of S and marks every x in
// S \ A_i that some independent prefix of A_i spans; returns the marked
// elements outside every A_i. Requests with l < 1 yield nullopt.
std::vector<std::optional<DeletionResult>> recover_redundant_batch(
    Scheduler& sched, const std::vector<RecoveryRequest>& requests,
    std::size_t ambient_n, const AlgorithmConfig& config);

// Single-set form; throws EmptyDeletion when l < 1.
DeletionResult recover_redundant(Scheduler& sched, const MatroidView& view,
                                 const ElementSet& s,
                                 const AlphaEstimate& alpha,
                                 std::size_t ambient_n,
                                 const AlgorithmConfig& config);

struct CoreSplit {
  ElementSet core;
  ElementSet non_core;
  // Sum of estimated marginals over non-core elements.
  double non_core_mass = 0.0;
  // (alpha / |S|)^2.
  double tau = 0.0;
  bool majority_core() const { return 2 * core.size() >= core.size() + non_core.size(); }
};

CoreSplit compute_core(const MarginalTable& marginals,
                       const AlphaEstimate& alpha);

// Greedy in ascending id over W: delete v, keep every other member of W on
// v's witness circuit, skip kept elements. Requires W inside S \ R, every
// witness a circuit of S containing its element and meeting S \ R in at most
// l_cap elements; throws DomainError naming the offending element.
DeletionResult short_circuit_bulk_delete(
    const ElementSet& w, const std::map<ElementId, Circuit>& witnesses,
    const ElementSet& s, const ElementSet& r, std::size_t l_cap);

// Everything balanced deletion needs to know about a peeled set.
struct SetProfile {
  ElementSet set;
  CircuitSample sample;
  AlphaEstimate alpha;
  CoreSplit split;
  bool good() const { return split.majority_core(); }
};

// Two rounds: a first-circuit sample over S, from which alpha, the marginals
// and the core split are all derived.
SetProfile profile_set(Scheduler& sched, const MatroidView& view,
                       const ElementSet& s, const AlgorithmConfig& config);

// Witness cutoff c_w log2(n) max(l, 1).
double witness_cutoff(double non_core_mass, std::size_t ambient_n,
                      const AlgorithmConfig& config);

// Short-circuit route: non-core elements whose best sampled circuit meets
// the non-core part in at most the cutoff, deleted greedily. No rounds.
DeletionResult short_circuit_route(const SetProfile& profile,
                                   std::size_t ambient_n,
                                   const AlgorithmConfig& config);

// For each profile: majority-core sets take the recovery route; otherwise
// the larger of the recovery (non-core mass) route and the short-circuit
// route. One shared round for all recovery probes. An entry is empty when
// both routes found nothing.
std::vector<DeletionResult> balanced_delete_batch(
    Scheduler& sched, const MatroidView& view,
    const std::vector<const SetProfile*>& profiles, std::size_t ambient_n,
    const AlgorithmConfig& config);

// Single-set form; throws EmptyDeletion when both routes are empty.
DeletionResult balanced_delete(Scheduler& sched, const MatroidView& view,
                               const SetProfile& profile,
                               std::size_t ambient_n,
                               const AlgorithmConfig& config);

// rank(live \ deleted) == rank(live), by direct oracle access.
bool deletion_is_sound(const MatroidView& view, const ElementSet& deleted);

}  // namespace parbasis

#endif  // PARBASIS_PROGRESS_H_
