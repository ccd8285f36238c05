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

// Simulated adaptive-query model.
//
// Every oracle access made by an algorithm goes through
// Scheduler::submit_batch: the whole batch is fixed before any answer is
// released, and each call costs exactly one round. A batch is a list of
// queries; most query kinds stand for a family of plain subset queries whose
// answers are returned in a compressed but lossless form (for instance, all
// prefixes of a sequence are summarized by the longest independent prefix,
// since prefix independence is monotone). The ledger charges the number of
// plain subset queries each kind stands for.

#ifndef PARBASIS_SCHEDULER_H_
#define PARBASIS_SCHEDULER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parbasis/rng.h"
#include "parbasis/types.h"
#include "parbasis/view.h"

namespace parbasis {

inline constexpr std::size_t kDefaultBudgetCap = 10'000'000;

struct RoundLedger {
  std::uint64_t seed = 0;
  std::size_t budget_cap = kDefaultBudgetCap;
  std::size_t rounds = 0;
  std::size_t total_queries = 0;
  std::vector<std::size_t> per_round;
  // Extra rounds an execution that charges one round per progress action
  // would have spent, on top of `rounds`.
  std::size_t unbatched_extra = 0;

  bool operator==(const RoundLedger&) const = default;
};

enum class QueryKind {
  // Is `elements` independent? Cost 1.
  kSubset,
  // All prefixes of `elements`. Answer: longest independent prefix length.
  // Cost |elements|.
  kPrefixes,
  // All prefixes of the seeded random ordering of `pool`. Answer: longest
  // independent prefix length. Cost |pool|.
  kRandomPrefixes,
  // `elements` minus each single member. Answer: flags[i] set when
  // elements \ {elements[i]} is independent. Cost |elements|.
  kRemovals,
  // Every prefix P_j of `elements` and every P_j + x for x in `pool`.
  // Answer: longest independent prefix length L, and flags[i] set when
  // P_L + pool[i] is dependent (equivalently, some independent prefix plus
  // pool[i] is dependent). Cost |elements| * (1 + |pool|).
  kSpanProbe,
  // Every subset of `pool` of size 1..limit. Answer: all circuits of size at
  // most `limit` (which determine every answer). Cost sum_k C(|pool|, k).
  kSmallCircuits,
};

struct Query {
  QueryKind kind = QueryKind::kSubset;
  const MatroidView* view = nullptr;
  std::vector<ElementId> elements;
  // Borrowed; must outlive submit_batch.
  std::span<const ElementId> pool;
  std::uint64_t seed = 0;
  std::size_t limit = 0;

  static Query subset(const MatroidView& view, std::vector<ElementId> elements);
  static Query prefixes(const MatroidView& view,
                        std::vector<ElementId> sequence);
  static Query random_prefixes(const MatroidView& view,
                               std::span<const ElementId> pool,
                               std::uint64_t seed);
  static Query removals(const MatroidView& view, std::vector<ElementId> set);
  static Query span_probe(const MatroidView& view,
                          std::vector<ElementId> sequence,
                          std::span<const ElementId> candidates);
  static Query small_circuits(const MatroidView& view,
                              std::span<const ElementId> pool,
                              std::size_t max_size);

  // Number of plain subset queries this stands for (saturating).
  std::size_t cost() const;
};

struct QueryAnswer {
  bool independent = false;
  std::size_t prefix = 0;
  std::vector<char> flags;
  // circuits_by_size[k] holds the circuits of size k concatenated, each
  // sorted ascending.
  std::vector<std::vector<ElementId>> circuits_by_size;
};

class QueryBatch {
 public:
  std::size_t add(Query q) {
    queries_.push_back(std::move(q));
    return queries_.size() - 1;
  }
  std::size_t size() const { return queries_.size(); }
  bool empty() const { return queries_.empty(); }
  std::size_t cost() const;
  const std::vector<Query>& queries() const { return queries_; }

 private:
  std::vector<Query> queries_;
};

// Sum_{k=1..max_size} C(n, k), saturating at SIZE_MAX.
std::size_t small_subset_count(std::size_t n, std::size_t max_size);

class Scheduler {
 public:
  explicit Scheduler(std::uint64_t seed,
                     std::size_t budget_cap = kDefaultBudgetCap);

  // One adaptive round. Throws DomainError on an empty batch and
  // BudgetExceeded when the batch costs more than the cap; neither charges a
  // round.
  std::vector<QueryAnswer> submit_batch(const QueryBatch& batch);

  // Deterministic stream derived from (seed, label); the same label always
  // yields the same stream.
  Rng fork_rng(std::string_view label) const;
  // fork_rng(label + "#" + k) for a counter k that advances on every call,
  // so repeated calls inside one run draw distinct streams.
  Rng fresh_rng(std::string_view label);

  const RoundLedger& ledger() const { return ledger_; }
  std::uint64_t seed() const { return ledger_.seed; }
  std::size_t budget_cap() const { return ledger_.budget_cap; }
  void note_unbatched(std::size_t extra_rounds) {
    ledger_.unbatched_extra += extra_rounds;
  }

  // Enables internal consistency assertions (circuit minimality and similar)
  // in the algorithms that run on this scheduler. They use direct oracle
  // access and are not charged.
  bool verify() const { return verify_; }
  void set_verify(bool on) { verify_ = on; }

 private:
  RoundLedger ledger_;
  std::uint64_t stream_counter_ = 0;
  bool verify_ = false;
};

}  // namespace parbasis

#endif  // PARBASIS_SCHEDULER_H_
