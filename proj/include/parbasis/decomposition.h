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

// Decomposition of a matroid into a sequence of peeled sets. Each peeled set
// S keeps almost all of the first-circuit mass of the matroid it was peeled
// from, and every subset T of S is hit by the first circuit of a random
// ordering of S with probability proportional to |T|.

#ifndef PARBASIS_DECOMPOSITION_H_
#define PARBASIS_DECOMPOSITION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parbasis/config.h"
#include "parbasis/estimators.h"
#include "parbasis/rng.h"
#include "parbasis/scheduler.h"
#include "parbasis/types.h"
#include "parbasis/view.h"

namespace parbasis {

// log2(max(n, 2)).
double log2n(std::size_t n);

// c / (|S| log2 n).
double removal_threshold(double c, std::size_t set_size,
                         std::size_t ambient_n);

// Deletes the lowest id of every circuit of size <= c0 in one round. The
// result has no circuit of size <= c0 and the same rank. Throws
// BudgetExceeded when sum_{k<=c0} C(n, k) exceeds the round budget.
MatroidView remove_small_circuits(Scheduler& sched, const MatroidView& view,
                                  std::size_t c0,
                                  ElementSet* deleted = nullptr);

struct RemovalStep {
  std::size_t size_before = 0;
  std::size_t removed = 0;
  // Sampled circuits lost by this removal, divided by the sample count.
  double mass_drop = 0.0;
};

struct GloballyOptimalCertificate {
  ElementSet set;
  // Fraction of the latest sample whose first circuit lies inside `set`.
  double q_hat = 0.0;
  PeelStrategy strategy = PeelStrategy::kGreedy;
  // Filled by post-hoc verification when a violating subset is found.
  std::optional<ElementSet> violation;
  std::size_t sampling_phases = 0;
  std::size_t sample_size = 0;
  // Circuit mass and set size when the latest sample was drawn.
  double epoch_q_hat = 0.0;
  std::size_t epoch_size = 0;
  // epoch_q_hat - c_rem (H(epoch_size) - H(|set|)) / log2 n; q_hat never
  // falls below it.
  double mass_floor = 0.0;
  std::vector<RemovalStep> removals;
};

// Starts from the live ground set and removes subsets T whose removal costs
// at most |T| theta(S) of sampled circuit mass, until none is found. Throws
// EmptyPeel when nothing survives; no_circuits() is set when the sample
// contained no circuit at all. `ambient_n` is the n in log n (0 means the
// live size).
GloballyOptimalCertificate globally_optimal_constructor(
    Scheduler& sched, const MatroidView& view, const AlgorithmConfig& config,
    std::size_t ambient_n = 0);

struct HittingViolation {
  ElementSet t;
  double p = 0.0;
  double bound = 0.0;  // |T| theta_v
};

// Exact check over all |S|! orderings of S (|S| <= 8): the subset T
// minimizing p_T / |T|, returned if p_T < |T| theta_v. Direct oracle access.
std::optional<HittingViolation> verify_subset_hitting_exact(
    const MatroidView& view, const ElementSet& s, double theta_v);

// Sampled check over prefixes of the ascending hit-count order.
std::optional<HittingViolation> verify_subset_hitting_sampled(
    const MatroidView& view, const ElementSet& s, double theta_v,
    std::size_t samples, Rng& rng);

enum class ProgressKind { kNone, kContracted, kDeleted };
std::string to_string(ProgressKind k);

struct PeelRecord {
  std::size_t index = 0;  // 1-based
  ElementSet set;
  std::size_t alpha = 0;
  // ceil(log2 |S|).
  std::size_t size_bucket = 0;
  std::optional<bool> good;
  ProgressKind progress_kind = ProgressKind::kNone;
  std::size_t progress_count = 0;
  double q_hat = 0.0;
  // Stop-rule left-hand sides (alpha n / |S| and the deletion accumulator)
  // and the shared right-hand side i f, when produced by the early-stopping
  // decomposition.
  double contract_lhs = 0.0;
  double delete_lhs = 0.0;
  double target = 0.0;
};

std::size_t size_bucket(std::size_t set_size);

struct PeelingResult {
  std::vector<PeelRecord> records;
  // The record that met the stop test, excluded from `records`.
  std::optional<PeelRecord> stopping;
  bool empty_peel = false;
  // Ground set after small-circuit removal and before any peeling.
  std::size_t n = 0;
};

// Removes small circuits, then peels sets until the live set is empty or a
// peeled set has alpha/|S| >= 1/log2 n or |S| > n/2. An EmptyPeel ends the
// loop with the records gathered so far and `empty_peel` set.
PeelingResult repeated_global_peeling(Scheduler& sched,
                                      const MatroidView& view,
                                      const AlgorithmConfig& config);

}  // namespace parbasis

#endif  // PARBASIS_DECOMPOSITION_H_
