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

#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "parbasis/algorithms.h"
#include "parbasis/generators.h"
#include "parbasis/io.h"
#include "parbasis/rng.h"
#include "parbasis/scheduler.h"
#include "parbasis/view.h"

namespace parbasis {
namespace {

std::size_t reference_prefix(const MatroidView& v, const std::vector<ElementId>& seq) {
  for (std::size_t j = 1; j <= seq.size(); ++j) {
    if (!oracle::independent(v, std::span(seq.data(), j))) return j - 1;
  }
  return seq.size();
}

TEST_CASE("a batch of subset queries costs one round") {
  const MatroidView v(std::make_shared<UniformMatroid>(5, 2));
  Scheduler sched(7);
  QueryBatch batch;
  batch.add(Query::subset(v, {0}));
  batch.add(Query::subset(v, {0, 1}));
  batch.add(Query::subset(v, {0, 1, 2}));
  const auto answers = sched.submit_batch(batch);
  REQUIRE(answers.size() == 3);
  CHECK(answers[0].independent);
  CHECK(answers[1].independent);
  CHECK_FALSE(answers[2].independent);
  CHECK(sched.ledger().rounds == 1);
  CHECK(sched.ledger().per_round == std::vector<std::size_t>{3});
  CHECK(sched.ledger().total_queries == 3);
}

TEST_CASE("an empty batch is rejected without charging") {
  Scheduler sched(7);
  CHECK_THROWS_AS(sched.submit_batch(QueryBatch{}), DomainError);
  CHECK(sched.ledger().rounds == 0);
}

TEST_CASE("successive batches add one round each") {
  const MatroidView v(std::make_shared<UniformMatroid>(64, 8));
  Scheduler sched(7);
  QueryBatch small;
  small.add(Query::subset(v, {1}));
  QueryBatch large;
  for (ElementId e = 0; e < 64; ++e) large.add(Query::subset(v, {e}));
  sched.submit_batch(small);
  sched.submit_batch(large);
  CHECK(sched.ledger().rounds == 2);
  CHECK(sched.ledger().total_queries == 65);
}

TEST_CASE("an over-budget batch throws with its size") {
  const MatroidView v(std::make_shared<UniformMatroid>(10, 3));
  Scheduler sched(1, 5);
  QueryBatch batch;
  batch.add(Query::prefixes(v, {0, 1, 2, 3, 4, 5}));
  try {
    sched.submit_batch(batch);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.requested() == 6);
    CHECK(e.cap() == 5);
  }
  CHECK(sched.ledger().rounds == 0);
  QueryBatch ok;
  ok.add(Query::prefixes(v, {0, 1, 2, 3, 4}));
  sched.submit_batch(ok);
  CHECK(sched.ledger().per_round == std::vector<std::size_t>{5});
}

TEST_CASE("composite queries match the reference oracle") {
  std::mt19937_64 rng(3);
  for (const auto& family : suite_families()) {
    const MatroidView v(generate({family, 9, 4, {}}));
    Scheduler sched(2);
    std::vector<ElementId> seq = v.live();
    std::shuffle(seq.begin(), seq.end(), rng);
    const std::vector<ElementId> pool(seq.begin() + 5, seq.end());
    const std::vector<ElementId> head(seq.begin(), seq.begin() + 5);

    QueryBatch batch;
    batch.add(Query::prefixes(v, seq));
    batch.add(Query::removals(v, head));
    batch.add(Query::span_probe(v, head, pool));
    batch.add(Query::small_circuits(v, v.live(), 3));
    batch.add(Query::random_prefixes(v, v.live(), 99));
    const auto a = sched.submit_batch(batch);
    CAPTURE(family);

    CHECK(a[0].prefix == reference_prefix(v, seq));

    for (std::size_t i = 0; i < head.size(); ++i) {
      auto rest = head;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      CHECK(static_cast<bool>(a[1].flags[i]) == oracle::independent(v, rest));
    }

    const std::size_t l = reference_prefix(v, head);
    CHECK(a[2].prefix == l);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      std::vector<ElementId> probe(head.begin(), head.begin() + l);
      probe.push_back(pool[i]);
      CHECK(static_cast<bool>(a[2].flags[i]) == !oracle::independent(v, probe));
    }

    // Every minimal dependent subset of size <= 3, by enumeration.
    std::vector<ElementSet> expected;
    const auto& live = v.live();
    for (std::uint32_t s = 1; s < (1u << live.size()); ++s) {
      if (std::popcount(s) > 3) continue;
      ElementSet t;
      for (std::size_t i = 0; i < live.size(); ++i) {
        if (s >> i & 1u) t.push_back(live[i]);
      }
      if (oracle::independent(v, t)) continue;
      bool minimal = true;
      for (std::size_t i = 0; i < t.size(); ++i) {
        auto rest = t;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (!oracle::independent(v, rest)) minimal = false;
      }
      if (minimal) expected.push_back(t);
    }
    std::vector<ElementSet> got;
    for (std::size_t k = 0; k < a[3].circuits_by_size.size(); ++k) {
      const auto& flat = a[3].circuits_by_size[k];
      for (std::size_t i = 0; k > 0 && i < flat.size(); i += k) {
        got.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i),
                         flat.begin() + static_cast<std::ptrdiff_t>(i + k));
      }
    }
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expected);

    PermutationSource source(v.live());
    const auto order = source.prefix(99, v.live_size());
    CHECK(a[4].prefix == reference_prefix(v, order));

    CHECK(sched.ledger().rounds == 1);
    std::size_t cost = 0;
    for (const auto& q : batch.queries()) cost += q.cost();
    CHECK(sched.ledger().per_round.back() == cost);
    CHECK(cost == seq.size() + head.size() + head.size() * (1 + pool.size()) +
                      small_subset_count(9, 3) + 9);
  }
}

TEST_CASE("forked streams are deterministic per label") {
  Scheduler a(42), b(42), c(43);
  auto r1 = a.fork_rng("alpha");
  auto r2 = a.fork_rng("alpha");
  auto r3 = b.fork_rng("alpha");
  auto r4 = a.fork_rng("beta");
  auto r5 = c.fork_rng("alpha");
  const auto x = r1();
  CHECK(x == r2());
  CHECK(x == r3());
  CHECK(x != r4());
  CHECK(x != r5());
  auto f1 = a.fresh_rng("alpha");
  auto f2 = a.fresh_rng("alpha");
  CHECK(f1() != f2());
}

TEST_CASE("equal seeds replay identical ledgers") {
  for (const auto& family : {"graphic_random", "partition", "linear_gf7"}) {
    const MatroidView v(generate({family, 128, 1, {}}));
    for (const auto& algo : {"kuw", "kps49", "main37"}) {
      const auto r1 = run_algorithm(algo, v, {}, 5);
      const auto r2 = run_algorithm(algo, v, {}, 5);
      CAPTURE(family);
      CAPTURE(algo);
      CHECK(r1.ledger == r2.ledger);
      CHECK(r1.basis == r2.basis);
      CHECK(ledger_to_json(r1.ledger).dump() == ledger_to_json(r2.ledger).dump());
      const auto r3 = run_algorithm(algo, v, {}, 6);
      CHECK(is_basis(v, r3.basis));
    }
  }
}

TEST_CASE("ledger totals equal the per-round sum and respect the cap") {
  const MatroidView v(generate({"graphic_random", 256, 2, {}}));
  for (const auto& algo : {"greedy", "kuw", "kps49", "main37"}) {
    const auto r = run_algorithm(algo, v, {}, 3);
    const auto& l = r.ledger;
    CHECK(l.rounds == l.per_round.size());
    CHECK(l.total_queries ==
          std::accumulate(l.per_round.begin(), l.per_round.end(), std::size_t{0}));
    for (auto q : l.per_round) CHECK(q <= l.budget_cap);
    CHECK(l.seed == 3);
  }
}

}  // namespace
}  // namespace parbasis
