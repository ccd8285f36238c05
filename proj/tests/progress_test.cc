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


#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"
#include "parbasis/decomposition.h"
#include "parbasis/estimators.h"
#include "parbasis/generators.h"
#include "parbasis/progress.h"
#include "parbasis/scheduler.h"
#include "parbasis/view.h"

namespace parbasis {
namespace {

using fixtures::direct_sum;
using fixtures::free_matroid;
using fixtures::range;
using fixtures::uniform;

AlphaEstimate alpha_of(std::size_t value, std::size_t size) {
  return AlphaEstimate{value, size};
}

bool sound_by_reference(const MatroidView& v, const ElementSet& deleted) {
  const auto rest = set_difference(v.live(), deleted);
  return oracle::rank(v, rest) == oracle::rank(v, v.live());
}

TEST_CASE("contraction length") {
  CHECK(contraction_length(100, 100, alpha_of(61, 100)) == 3);
  CHECK(contraction_length(1024, 1024, alpha_of(2, 1024)) == 1);
  CHECK(contraction_length(50, 50, alpha_of(51, 50)) == 50);
  CHECK(contraction_length(0, 0, alpha_of(1, 0)) == 0);
}

TEST_CASE("contracting independent prefixes") {
  AlgorithmConfig config;
  config.verify = true;
  {
    const MatroidView v(uniform(100, 60));
    Scheduler sched(1);
    sched.set_verify(true);
    const auto c = contract_independent(
        sched, v, contraction_length(100, 100, alpha_of(61, 100)), config);
    CHECK(c.size() >= 3);
    CHECK(oracle::independent(v, c));
    CHECK(sched.ledger().rounds == 1);
  }
  {
    const MatroidView v(generate({"rank1", 1024, 1, {}}));
    Scheduler sched(1);
    const auto c = contract_independent(sched, v, 1, config);
    CHECK(c.size() == 1);
  }
  {
    const MatroidView v(free_matroid(30));
    Scheduler sched(1);
    const auto c = contract_independent(
        sched, v, contraction_length(30, 30, alpha_of(31, 30)), config);
    CHECK(c == v.live());
  }
  for (auto mode : {ContractionMode::kLongestPrefix, ContractionMode::kFixedLength}) {
    AlgorithmConfig fixed = config;
    fixed.contraction_mode = mode;
    const MatroidView v(uniform(40, 5));
    Scheduler sched(1);
    CHECK_THROWS_AS(contract_independent(sched, v, 10, fixed), ContractionFailed);
    const auto c = contract_with_retry(sched, v, 10, fixed);
    CHECK(c.size() >= 5);
    CHECK(oracle::independent(v, c));
    if (mode == ContractionMode::kFixedLength) CHECK(c.size() == 5);
  }
}

TEST_CASE("contractions are independent on every family") {
  for (const auto& family : suite_families()) {
    const MatroidView v(generate({family, 200, 3, {}}));
    Scheduler sched(4);
    const auto c = contract_with_retry(sched, v, 20, {});
    CAPTURE(family);
    CHECK_FALSE(c.empty());
    CHECK(v.is_independent(c));
    CHECK(oracle::independent(v, c));
  }
}

TEST_CASE("redundant recovery on a rank-one matroid") {
  const MatroidView v(generate({"rank1", 1024, 1, {}}));
  Scheduler sched(2);
  sched.set_verify(true);
  AlgorithmConfig config;
  const auto shape = recovery_shape(1024, alpha_of(2, 1024), 1024, config);
  CHECK(shape.t == 2);
  CHECK(shape.probes == 128);
  const auto d = recover_redundant(sched, v, v.live(), alpha_of(2, 1024), 1024, config);
  CHECK(d.method == DeletionMethod::kRedundantRecovery);
  CHECK(d.deleted == set_difference(v.live(), d.kept_witness));
  // Each element avoids all 128 two-element prefixes with probability
  // (1 - 2/1024)^128.
  const double expected = 1024.0 * std::pow(1.0 - 2.0 / 1024.0, 128);
  CHECK(std::abs(static_cast<double>(d.deleted.size()) - expected) <= 40.0);
  CHECK(deletion_is_sound(v, d.deleted));
  CHECK(sched.ledger().rounds == 1);
}

TEST_CASE("redundant recovery on uniform(4096, 32)") {
  const MatroidView v(uniform(4096, 32));
  Scheduler sched(3);
  AlgorithmConfig config;
  const auto alpha = alpha_of(33, 4096);
  const auto shape = recovery_shape(4096, alpha, 4096, config);
  const auto d = recover_redundant(sched, v, v.live(), alpha, 4096, config);
  // Every prefix reaches full rank, so all non-prefix elements are marked.
  const double expected =
      4096.0 * std::pow(1.0 - static_cast<double>(shape.t) / 4096.0,
                        static_cast<double>(shape.probes));
  CHECK(std::abs(static_cast<double>(d.deleted.size()) - expected) <= 150.0);
  // Sum over x of min(1, p_x |S|^2 / alpha^2) with p_x = 33/4096.
  double formula = 0;
  for (int i = 0; i < 4096; ++i) {
    formula += std::min(1.0, (33.0 / 4096.0) * 4096.0 * 4096.0 / (33.0 * 33.0));
  }
  CHECK(d.deleted.size() >= formula / 4);
  CHECK(d.deleted.size() <= formula * 4);
  CHECK(deletion_is_sound(v, d.deleted));
}

TEST_CASE("recovery marks only spanned elements") {
  for (const auto& family : suite_families()) {
    const MatroidView v(generate({family, 512, 4, {}}));
    Scheduler sched(5);
    sched.set_verify(true);
    AlgorithmConfig config;
    const auto alpha = estimate_alpha(sched, v, v.live(), 1024);
    if (recovery_shape(v.live_size(), alpha, 512, config).probes == 0) continue;
    const auto d = recover_redundant(sched, v, v.live(), alpha, 512, config);
    CAPTURE(family);
    // Stronger than B_i in span(A_i): everything deleted is spanned by the
    // kept prefixes together.
    const std::size_t r = oracle::rank(v, d.kept_witness);
    for (std::size_t i = 0; i < d.deleted.size(); i += 17) {
      auto with = d.kept_witness;
      with.push_back(d.deleted[i]);
      CHECK(oracle::rank(v, with) == r);
    }
    CHECK(sound_by_reference(v, d.deleted));
  }
}

TEST_CASE("recovery on small or free sets deletes nothing") {
  AlgorithmConfig config;
  {
    const MatroidView v(uniform(20, 10));
    Scheduler sched(1);
    CHECK_THROWS_AS(recover_redundant(sched, v, v.live(), alpha_of(11, 20), 1024, config),
                    EmptyDeletion);
    CHECK(sched.ledger().rounds == 0);
  }
  {
    const MatroidView v(free_matroid(1024));
    Scheduler sched(1);
    const auto d = recover_redundant(sched, v, v.live(), alpha_of(2, 1024), 1024, config);
    CHECK(d.deleted.empty());
  }
}

TEST_CASE("core split") {
  {
    const MatroidView v(uniform(20, 9));
    Scheduler sched(1);
    const auto s = sample_first_circuits(sched, v, v.live(), 10'000);
    const auto split = compute_core(MarginalTable(s), alpha_of(10, 20));
    CHECK(split.tau == doctest::Approx(0.25));
    CHECK(split.core == v.live());
    CHECK(split.non_core.empty());
    CHECK(split.majority_core());
  }
  {
    const MatroidView v(direct_sum({uniform(4, 1), free_matroid(6)}));
    Scheduler sched(1);
    const auto s = sample_first_circuits(sched, v, v.live(), 2000);
    const MarginalTable table(s);
    const auto split = compute_core(table, alpha_of(2, 10));
    CHECK(split.core == range(0, 4));
    CHECK(split.non_core == range(4, 10));
    CHECK(split.non_core_mass == 0.0);
    for (ElementId e : split.core) CHECK(table.p(e) >= split.tau);
  }
  {
    // Correlated miniature: the long-circuit block is non-core.
    const MatroidView v(direct_sum({uniform(3, 1), uniform(5, 4)}));
    Scheduler sched(1);
    AlgorithmConfig config;
    config.samples = 20'000;
    const auto profile = profile_set(sched, v, v.live(), config);
    CHECK(profile.split.non_core == range(3, 8));
    CHECK(profile.split.core == range(0, 3));
    CHECK_FALSE(profile.good());
    CHECK(sched.ledger().rounds == 2);
  }
}

TEST_CASE("core split partitions the set") {
  for (const auto& family : suite_families()) {
    const MatroidView v(generate({family, 64, 6, {}}));
    Scheduler sched(1);
    AlgorithmConfig config;
    config.samples = 5000;
    const auto p = profile_set(sched, v, v.live(), config);
    const auto& split = p.split;
    CHECK(set_union(split.core, split.non_core) == v.live());
    CHECK(intersection_size(split.core, split.non_core) == 0);
    const MarginalTable table(p.sample);
    double mass = 0;
    for (ElementId e : split.core) CHECK(table.p(e) >= split.tau);
    for (ElementId e : split.non_core) {
      CHECK(table.p(e) < split.tau);
      mass += table.p(e);
    }
    CHECK(split.non_core_mass == doctest::Approx(mass));
  }
}

TEST_CASE("short-circuit deletion examples") {
  {
    // Three disjoint parallel pairs.
    const MatroidView v(direct_sum({uniform(2, 1), uniform(2, 1), uniform(2, 1)}));
    std::map<ElementId, Circuit> w;
    for (ElementId p = 0; p < 6; p += 2) {
      w[p] = Circuit{{p, p + 1}};
      w[p + 1] = Circuit{{p, p + 1}};
    }
    const auto d = short_circuit_bulk_delete(range(0, 6), w, range(0, 6), {}, 2);
    CHECK(d.deleted == ElementSet{0, 2, 4});
    CHECK(d.kept_witness == ElementSet{1, 3, 5});
    CHECK(d.method == DeletionMethod::kShortCircuit);
    CHECK(sound_by_reference(v, d.deleted));
  }
  {
    // Chain on a rank-one matroid: w_i's witness is {w_i, w_{i+1}}.
    const MatroidView v(uniform(6, 1));
    std::map<ElementId, Circuit> w;
    for (ElementId i = 0; i < 5; ++i) w[i] = Circuit{{i, i + 1}};
    w[5] = Circuit{{4, 5}};
    const auto d = short_circuit_bulk_delete(range(0, 6), w, range(0, 6), {}, 2);
    CHECK(d.deleted.size() >= 3);
    CHECK(sound_by_reference(v, d.deleted));
  }
  {
    // Element 3 is parallel to the contracted element 2, so {3} is a circuit.
    const MatroidView v =
        MatroidView(fixtures::parallel_pair(2)).with_contracted(ElementSet{2});
    std::map<ElementId, Circuit> w{{3, Circuit{{3}}}};
    const auto d = short_circuit_bulk_delete(ElementSet{3}, w, v.live(), {}, 1);
    CHECK(d.deleted == ElementSet{3});
    CHECK(sound_by_reference(v, d.deleted));
  }
}

TEST_CASE("short-circuit preconditions name the element") {
  std::map<ElementId, Circuit> w{{0, Circuit{{0, 1, 2}}}, {1, Circuit{{0, 1}}}};
  CHECK_THROWS_WITH_AS(short_circuit_bulk_delete(ElementSet{0}, w, range(0, 3), {}, 2),
                       doctest::Contains("element 0"), DomainError);
  CHECK_THROWS_WITH_AS(short_circuit_bulk_delete(ElementSet{1}, w, range(0, 3), ElementSet{1}, 2),
                       doctest::Contains("element 1"), DomainError);
  CHECK_THROWS_AS(short_circuit_bulk_delete(ElementSet{2}, w, range(0, 3), {}, 2),
                  DomainError);
  CHECK_THROWS_AS(short_circuit_bulk_delete(ElementSet{1}, w, range(1, 3), {}, 2),
                  DomainError);
  // Members of R do not count toward the cap.
  const auto d = short_circuit_bulk_delete(ElementSet{0}, w, range(0, 3), ElementSet{2}, 2);
  CHECK(d.deleted == ElementSet{0});
}

TEST_CASE("short-circuit deletion on random witness instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = fixtures::random_witness_instance(seed);
    const auto d = short_circuit_bulk_delete(inst.w, inst.witnesses, inst.s, inst.r,
                                             inst.l_cap);
    CAPTURE(seed);
    const std::size_t bound = (inst.w.size() + inst.l_cap) / (inst.l_cap + 1);
    CHECK(d.deleted.size() >= bound);
    CHECK(is_subset(d.deleted, inst.w));
    CHECK(sound_by_reference(inst.view, d.deleted));
  }
}

TEST_CASE("balanced deletion") {
  AlgorithmConfig config;
  config.samples = 20'000;
  {
    const MatroidView v(generate({"rank1", 1024, 1, {}}));
    Scheduler sched(1);
    const auto p = profile_set(sched, v, v.live(), config);
    CHECK(p.good());
    const auto d = balanced_delete(sched, v, p, 1024, config);
    CHECK(d.method == DeletionMethod::kCoreRecovery);
    CHECK(d.deleted.size() >= 512);
    CHECK(deletion_is_sound(v, d.deleted));
  }
  {
    const MatroidView v(free_matroid(64));
    Scheduler sched(1);
    const auto p = profile_set(sched, v, v.live(), config);
    CHECK_THROWS_AS(balanced_delete(sched, v, p, 64, config), EmptyDeletion);
  }
  {
    const MatroidView v(uniform(4096, 256));
    Scheduler sched(2);
    AlgorithmConfig small = config;
    small.samples = 2000;
    const auto p = profile_set(sched, v, v.live(), small);
    const auto d = balanced_delete(sched, v, p, 4096, small);
    const double s = 4096;
    const double target = std::min(s, std::pow(s, 1.5) / p.alpha.value);
    MESSAGE("uniform(4096,256): deleted " << d.deleted.size() << " of target "
                                          << target << ", ratio "
                                          << d.deleted.size() / target);
    CHECK_FALSE(d.deleted.empty());
    CHECK(deletion_is_sound(v, d.deleted));
  }
}

TEST_CASE("long non-core witnesses send deletion to the mass route") {
  // 20 parallel elements plus a 60-element block whose only circuit is the
  // whole block: non-core witnesses are far longer than the cutoff.
  const MatroidView v(direct_sum({uniform(20, 1), uniform(60, 59)}));
  AlgorithmConfig config;
  config.samples = 20'000;
  Scheduler sched(1);
  const auto p = profile_set(sched, v, v.live(), config);
  REQUIRE_FALSE(p.good());
  const double cutoff = witness_cutoff(p.split.non_core_mass, 80, config);
  for (const auto& c : p.sample.circuits) {
    if (!c) continue;
    if (intersects(c->members, p.split.non_core)) {
      CHECK(static_cast<double>(intersection_size(c->members, p.split.non_core)) > cutoff);
    }
  }
  CHECK(short_circuit_route(p, 80, config).deleted.empty());
  const auto d = balanced_delete(sched, v, p, 80, config);
  CHECK(d.method == DeletionMethod::kNonCoreMass);
  CHECK(deletion_is_sound(v, d.deleted));
}

TEST_CASE("short-circuit route wins on many short non-core circuits") {
  // A dominant rank-one block makes tau large relative to the parallel pairs'
  // marginals, which then sit in the non-core with witnesses of size two.
  std::vector<MatroidPtr> parts = {uniform(40, 1)};
  for (int i = 0; i < 30; ++i) parts.push_back(uniform(2, 1));
  const MatroidView v(direct_sum(parts));
  AlgorithmConfig config;
  config.samples = 20'000;
  Scheduler sched(3);
  const auto p = profile_set(sched, v, v.live(), config);
  const auto d = short_circuit_route(p, v.live_size(), config);
  CHECK(sound_by_reference(v, d.deleted));
  const auto best = balanced_delete_batch(sched, v, {&p}, v.live_size(), config);
  CHECK(sound_by_reference(v, best[0].deleted));
  CHECK(best[0].deleted.size() >= d.deleted.size());
}

TEST_CASE("every deletion result is sound") {
  AlgorithmConfig config;
  config.samples = 5000;
  for (const auto& family : suite_families()) {
    if (family == "free") continue;
    for (std::size_t n : {64u, 256u}) {
      const MatroidView v0(generate({family, n, 8, {}}));
      Scheduler sched(9);
      const auto v = remove_small_circuits(sched, v0, 2);
      CAPTURE(family);
      CAPTURE(n);
      GloballyOptimalCertificate cert;
      try {
        cert = globally_optimal_constructor(sched, v, config);
      } catch (const EmptyPeel&) {
        // Preprocessing left no circuits.
        CHECK(oracle::independent(v, v.live()));
        continue;
      }
      const auto p = profile_set(sched, v, cert.set, config);
      const auto d = balanced_delete_batch(sched, v, {&p}, n, config);
      CHECK(is_subset(d[0].deleted, cert.set));
      CHECK(sound_by_reference(v, d[0].deleted));
      CHECK(deletion_is_sound(v, d[0].deleted));
    }
  }
}

}  // namespace
}  // namespace parbasis
