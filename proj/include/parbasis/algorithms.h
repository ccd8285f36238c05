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

// End-to-end basis finders. Every finder runs on its own Scheduler, so the
// returned ledger counts exactly the rounds that finder spent.

#ifndef PARBASIS_ALGORITHMS_H_
#define PARBASIS_ALGORITHMS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parbasis/config.h"
#include "parbasis/decomposition.h"
#include "parbasis/progress.h"
#include "parbasis/scheduler.h"
#include "parbasis/types.h"
#include "parbasis/view.h"

namespace parbasis {

enum class StopReason { kContractReturn, kDeleteReturn, kExhausted };
std::string to_string(StopReason r);

struct RunResult {
  std::string algorithm;
  ElementSet basis;
  RoundLedger ledger;
  std::vector<PeelRecord> peel_trace;
  std::vector<StopReason> stop_reasons;
  // Deletion batches executed, and how many failed the rank check (only
  // checked when config.verify or config.check_deletions is set).
  std::size_t deletion_checks = 0;
  std::size_t unsound_deletions = 0;
  // Times the driver handed the remainder to the square-root baseline.
  std::size_t fallbacks = 0;
  std::string fallback_reason;
};

// Independent, and every other live element is spanned by it.
bool is_basis(const MatroidView& view, const ElementSet& basis);

// Sequential scan in id order; one round per element.
ElementSet greedy_basis(Scheduler& sched, const MatroidView& view);
RunResult greedy_basis_run(const MatroidView& view, std::uint64_t seed,
                           std::size_t budget_cap = kDefaultBudgetCap);

// Rank of a subset by a sequential scan: |S| rounds.
std::size_t greedy_rank(Scheduler& sched, const MatroidView& view,
                        const ElementSet& s);

// Square-root baseline on an existing scheduler: split the live set into
// ceil(sqrt(n')) contiguous groups, query every prefix of every group in one
// round, contract the largest fully independent group or else delete the
// first dependent element of every group. Returns the final view (empty live
// set).
MatroidView kuw_reduce(Scheduler& sched, const MatroidView& view);
RunResult kuw_basis(const MatroidView& view, std::uint64_t seed,
                    std::size_t budget_cap = kDefaultBudgetCap);

struct DecompositionOutcome {
  StopReason reason = StopReason::kExhausted;
  // Every peeled set, in order; for a contraction stop the last one is the
  // trigger and has no matching profile.
  std::vector<PeelRecord> records;
  std::vector<SetProfile> profiles;
  std::size_t n = 0;
  double f = 0.0;
  // A later peel found nothing to keep. When its sample formed no circuit the
  // remaining live set is independent and is stored here.
  bool empty_peel = false;
  std::optional<ElementSet> independent_remainder;
};

// max(f_min, n^f_exponent / log2(n)^f_log_power).
double progress_target(std::size_t n, const AlgorithmConfig& config);

// Early-stopping decomposition of a preprocessed view (n = live size at
// entry): peel sets while at least n/2 elements are live, stopping once
// contraction of the current set or the deletions accumulated so far reach
// i f. Each peel costs the constructor's rounds plus two rounds of profiling.
// An EmptyPeel on the first peel propagates; a later one ends the loop.
DecompositionOutcome guaranteed_progress_decomposition(
    Scheduler& sched, const MatroidView& view, const AlgorithmConfig& config,
    std::optional<double> f_override = std::nullopt);

RunResult find_basis_37(const MatroidView& view, const AlgorithmConfig& config,
                        std::uint64_t seed,
                        std::size_t budget_cap = kDefaultBudgetCap);

// Comparator decomposition, after removing small circuits: sets with
// alpha <= sqrt(|S|) accumulate toward i t; the first set above that
// threshold is contracted. An EmptyPeel ends the loop with `empty_peel` set.
struct Decomposition49Outcome {
  StopReason reason = StopReason::kExhausted;
  std::vector<PeelRecord> records;
  std::vector<AlphaEstimate> alphas;
  MatroidView preprocessed;
  ElementSet small_circuit_deletions;
  std::size_t n = 0;
  double t = 0.0;
  bool empty_peel = false;

  explicit Decomposition49Outcome(MatroidView v) : preprocessed(std::move(v)) {}
};
Decomposition49Outcome decompose_49(Scheduler& sched, const MatroidView& view,
                                    const AlgorithmConfig& config);
// Full comparator driver.
RunResult new_decomposition_49(const MatroidView& view,
                               const AlgorithmConfig& config,
                               std::uint64_t seed,
                               std::size_t budget_cap = kDefaultBudgetCap);

// Dispatch by name: greedy, kuw, kps49, main37.
RunResult run_algorithm(const std::string& name, const MatroidView& view,
                        const AlgorithmConfig& config, std::uint64_t seed,
                        std::size_t budget_cap = kDefaultBudgetCap);

}  // namespace parbasis

#endif  // PARBASIS_ALGORITHMS_H_
