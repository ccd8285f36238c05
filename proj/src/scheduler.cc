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

#include "parbasis/scheduler.h"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <utility>

namespace parbasis {
namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t sat_add(std::size_t a, std::size_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// Evaluates the queries of one batch. States and permutation sources are
// cached per view and per pool for the duration of the batch only.
class Evaluator {
 public:
  QueryAnswer evaluate(const Query& q) {
    if (q.view == nullptr) throw DomainError("query without a view");
    QueryAnswer a;
    switch (q.kind) {
      case QueryKind::kSubset:
        check(*q.view, q.elements);
        a.independent = longest_prefix(*q.view, q.elements) == q.elements.size();
        break;
      case QueryKind::kPrefixes:
        check(*q.view, q.elements);
        a.prefix = longest_prefix(*q.view, q.elements);
        a.independent = a.prefix == q.elements.size();
        break;
      case QueryKind::kRandomPrefixes:
        a.prefix = random_prefix(q);
        a.independent = a.prefix == q.pool.size();
        break;
      case QueryKind::kRemovals:
        check(*q.view, q.elements);
        removals(*q.view, q.elements, a);
        break;
      case QueryKind::kSpanProbe:
        check(*q.view, q.elements);
        check(*q.view, q.pool);
        span_probe(q, a);
        break;
      case QueryKind::kSmallCircuits:
        check(*q.view, q.pool);
        small_circuits(q, a);
        break;
    }
    return a;
  }

 private:
  IndependenceState& state_for(const MatroidView& view) {
    auto& slot = states_[&view];
    if (!slot) slot = view.new_state();
    slot->reset();
    return *slot;
  }

  // Live, duplicate-free.
  void check(const MatroidView& view, std::span<const ElementId> elements) {
    view.require_live(elements);
    if (stamp_.size() < view.universe()) stamp_.assign(view.universe(), 0);
    ++epoch_;
    for (ElementId e : elements) {
      if (stamp_[e] == epoch_) {
        throw DomainError("query repeats element " + std::to_string(e));
      }
      stamp_[e] = epoch_;
    }
  }

  std::size_t longest_prefix(const MatroidView& view,
                             std::span<const ElementId> seq) {
    auto& s = state_for(view);
    std::size_t j = 0;
    while (j < seq.size() && s.can_add(seq[j])) s.add(seq[j++]);
    return j;
  }

  std::size_t random_prefix(const Query& q) {
    const auto key = std::make_pair(q.pool.data(), q.pool.size());
    auto it = sources_.find(key);
    if (it == sources_.end()) {
      check(*q.view, q.pool);
      it = sources_.emplace(key, std::make_unique<PermutationSource>(q.pool))
               .first;
    }
    auto& s = state_for(*q.view);
    PermutationSource::Walker walker(*it->second, q.seed);
    while (!walker.done()) {
      const ElementId e = walker.next();
      if (!s.can_add(e)) return walker.position() - 1;
      s.add(e);
    }
    return walker.position();
  }

  void removals(const MatroidView& view, std::span<const ElementId> set,
                QueryAnswer& a) {
    a.flags.assign(set.size(), 0);
    if (set.empty()) return;
    const std::size_t head = longest_prefix(view, set);
    if (head == set.size()) {
      std::fill(a.flags.begin(), a.flags.end(), 1);
      a.independent = true;
      return;
    }
    auto& s = *states_[&view];
    if (head + 1 == set.size()) {
      // set = I + e with I independent: the unique circuit decides each flag.
      ElementSet circuit;
      view.circuit_with(s, set.back(), circuit);
      for (std::size_t i = 0; i < set.size(); ++i) {
        a.flags[i] = set_contains(circuit, set[i]) ? 1 : 0;
      }
      return;
    }
    for (std::size_t skip = 0; skip < set.size(); ++skip) {
      auto& t = state_for(view);
      bool ok = true;
      for (std::size_t i = 0; i < set.size() && ok; ++i) {
        if (i == skip) continue;
        if (t.can_add(set[i])) {
          t.add(set[i]);
        } else {
          ok = false;
        }
      }
      a.flags[skip] = ok ? 1 : 0;
    }
  }

  void span_probe(const Query& q, QueryAnswer& a) {
    a.prefix = longest_prefix(*q.view, q.elements);
    a.independent = a.prefix == q.elements.size();
    auto& s = *states_[q.view];
    ++epoch_;
    for (std::size_t j = 0; j < a.prefix; ++j) stamp_[q.elements[j]] = epoch_;
    a.flags.assign(q.pool.size(), 0);
    for (std::size_t i = 0; i < q.pool.size(); ++i) {
      const ElementId x = q.pool[i];
      if (stamp_[x] != epoch_ && !s.can_add(x)) a.flags[i] = 1;
    }
  }

  // Depth-first over independent subsets of the sorted pool. A subset I + e
  // with I independent and e beyond max(I) is a circuit iff the circuit
  // inside it is all of it; every circuit is reached this way exactly once.
  void small_circuits(const Query& q, QueryAnswer& a) {
    a.circuits_by_size.assign(q.limit + 1, {});
    if (q.limit == 0) return;
    std::vector<ElementId> pool(q.pool.begin(), q.pool.end());
    std::sort(pool.begin(), pool.end());
    std::vector<std::size_t> path;
    ElementSet circuit;
    auto visit = [&](auto&& self) -> void {
      auto& s = state_for(*q.view);
      for (std::size_t i : path) s.add(pool[i]);
      const std::size_t start = path.empty() ? 0 : path.back() + 1;
      std::vector<std::size_t> children;
      for (std::size_t i = start; i < pool.size(); ++i) {
        if (s.can_add(pool[i])) {
          if (path.size() + 1 < q.limit) children.push_back(i);
          continue;
        }
        q.view->circuit_with(s, pool[i], circuit);
        if (circuit.size() == path.size() + 1) {
          auto& out = a.circuits_by_size[circuit.size()];
          out.insert(out.end(), circuit.begin(), circuit.end());
        }
      }
      for (std::size_t c : children) {
        path.push_back(c);
        self(self);
        path.pop_back();
      }
    };
    visit(visit);
  }

  std::map<const MatroidView*, std::unique_ptr<IndependenceState>> states_;
  std::map<std::pair<const ElementId*, std::size_t>,
           std::unique_ptr<PermutationSource>>
      sources_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

}  // namespace

Query Query::subset(const MatroidView& view, std::vector<ElementId> elements) {
  Query q;
  q.kind = QueryKind::kSubset;
  q.view = &view;
  q.elements = std::move(elements);
  return q;
}

Query Query::prefixes(const MatroidView& view,
                      std::vector<ElementId> sequence) {
  Query q;
  q.kind = QueryKind::kPrefixes;
  q.view = &view;
  q.elements = std::move(sequence);
  return q;
}

Query Query::random_prefixes(const MatroidView& view,
                             std::span<const ElementId> pool,
                             std::uint64_t seed) {
  Query q;
  q.kind = QueryKind::kRandomPrefixes;
  q.view = &view;
  q.pool = pool;
  q.seed = seed;
  return q;
}

Query Query::removals(const MatroidView& view, std::vector<ElementId> set) {
  Query q;
  q.kind = QueryKind::kRemovals;
  q.view = &view;
  q.elements = std::move(set);
  return q;
}

Query Query::span_probe(const MatroidView& view,
                        std::vector<ElementId> sequence,
                        std::span<const ElementId> candidates) {
  Query q;
  q.kind = QueryKind::kSpanProbe;
  q.view = &view;
  q.elements = std::move(sequence);
  q.pool = candidates;
  return q;
}

Query Query::small_circuits(const MatroidView& view,
                            std::span<const ElementId> pool,
                            std::size_t max_size) {
  Query q;
  q.kind = QueryKind::kSmallCircuits;
  q.view = &view;
  q.pool = pool;
  q.limit = max_size;
  return q;
}

std::size_t Query::cost() const {
  switch (kind) {
    case QueryKind::kSubset:
      return 1;
    case QueryKind::kPrefixes:
    case QueryKind::kRemovals:
      return elements.size();
    case QueryKind::kRandomPrefixes:
      return pool.size();
    case QueryKind::kSpanProbe:
      return sat_mul(elements.size(), sat_add(1, pool.size()));
    case QueryKind::kSmallCircuits:
      return small_subset_count(pool.size(), limit);
  }
  return 0;
}

std::size_t QueryBatch::cost() const {
  std::size_t total = 0;
  for (const auto& q : queries_) total = sat_add(total, q.cost());
  return total;
}

std::size_t small_subset_count(std::size_t n, std::size_t max_size) {
  std::size_t total = 0;
  std::size_t binom = 1;  // C(n, k)
  for (std::size_t k = 1; k <= std::min(n, max_size); ++k) {
    // C(n, k) = C(n, k-1) * (n-k+1) / k, exact at every step.
    const std::size_t g = std::gcd(binom, k);
    const std::size_t num = sat_mul(binom / g, (n - k + 1) / (k / g));
    if (num == kSaturated) return kSaturated;
    binom = num;
    total = sat_add(total, binom);
  }
  return total;
}

Scheduler::Scheduler(std::uint64_t seed, std::size_t budget_cap) {
  ledger_.seed = seed;
  ledger_.budget_cap = budget_cap;
}

std::vector<QueryAnswer> Scheduler::submit_batch(const QueryBatch& batch) {
  if (batch.empty()) throw DomainError("empty query batch");
  const std::size_t cost = batch.cost();
  if (cost > ledger_.budget_cap) throw BudgetExceeded(cost, ledger_.budget_cap);
  Evaluator evaluator;
  std::vector<QueryAnswer> answers;
  answers.reserve(batch.size());
  for (const auto& q : batch.queries()) answers.push_back(evaluator.evaluate(q));
  ledger_.rounds += 1;
  ledger_.total_queries += cost;
  ledger_.per_round.push_back(cost);
  return answers;
}

Rng Scheduler::fork_rng(std::string_view label) const {
  return Rng(mix_seed(ledger_.seed, label));
}

Rng Scheduler::fresh_rng(std::string_view label) {
  std::string full(label);
  full += '#';
  full += std::to_string(stream_counter_++);
  return fork_rng(full);
}

}  // namespace parbasis
