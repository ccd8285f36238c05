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
#include <map>
#include <memory>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"
#include "parbasis/algorithms.h"
#include "parbasis/applications.h"
#include "parbasis/generators.h"
#include "parbasis/view.h"

namespace parbasis {
namespace {

const BasisFinder kKuw = [](const MatroidView& v, std::uint64_t seed) {
  return kuw_basis(v, seed);
};

const BasisFinder kMain = [](const MatroidView& v, std::uint64_t seed) {
  return find_basis_37(v, {}, seed);
};

// Pearson statistic against exact probabilities; returns the upper-tail p.
double chi_square_p(const std::map<std::vector<ElementId>, double>& exact,
                    const std::map<std::vector<ElementId>, std::size_t>& counts,
                    std::size_t trials) {
  double stat = 0;
  for (const auto& [seq, p] : exact) {
    const double expected = p * static_cast<double>(trials);
    const auto it = counts.find(seq);
    const double got = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    stat += (got - expected) * (got - expected) / expected;
  }
  for (const auto& [seq, c] : counts) {
    if (!exact.count(seq)) return 0.0;
  }
  const boost::math::chi_squared dist(static_cast<double>(exact.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

TEST_CASE("feasible sequence on a triangle takes the two earliest edges") {
  const MatroidView v(fixtures::triangle());
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = random_feasible_sequence(v, kKuw, seed);
    REQUIRE(s.elements.size() == 2);
    CHECK(s.elements[0] == s.permutation[0]);
    CHECK(s.elements[1] == s.permutation[1]);
  }
}

TEST_CASE("feasible sequence on a free matroid is the permutation") {
  const MatroidView v(fixtures::free_matroid(5));
  const auto s = random_feasible_sequence(v, kKuw, 3);
  CHECK(s.elements == s.permutation);
  CHECK(s.elements.size() == 5);
  CHECK(is_feasible_sequence(v, s.elements));
}

TEST_CASE("uniform(4,2) sequences are uniform over ordered pairs") {
  const MatroidView v(fixtures::uniform(4, 2));
  const auto exact = oracle::feasible_sequence_distribution(v);
  REQUIRE(exact.size() == 12);
  for (const auto& [seq, p] : exact) CHECK(p == doctest::Approx(1.0 / 12));
  std::map<std::vector<ElementId>, std::size_t> counts;
  const std::size_t trials = 10'000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    ++counts[random_feasible_sequence(v, kKuw, seed).elements];
  }
  CHECK(chi_square_p(exact, counts, trials) > 0.001);
}

TEST_CASE("sequence distribution matches the sequential process") {
  const std::vector<MatroidPtr> instances = {
      generate({"graphic_complete", 6, 1, {}}),
      generate({"partition", 6, 1, {{"block", "3"}, {"cap", "1"}}}),
  };
  for (const auto& m : instances) {
    const MatroidView v(m);
    const auto exact = oracle::feasible_sequence_distribution(v);
    std::map<std::vector<ElementId>, std::size_t> counts;
    const std::size_t trials = 4000;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
      ++counts[random_feasible_sequence(v, kKuw, seed).elements];
    }
    CAPTURE(m->family());
    CHECK(chi_square_p(exact, counts, trials) > 0.001);
  }
}

TEST_CASE("sequences are feasible and of full rank") {
  for (const auto& family : suite_families()) {
    const MatroidView v(generate({family, 40, 3, {}}));
    const auto s = random_feasible_sequence(v, kMain, 5);
    CAPTURE(family);
    CHECK(s.elements.size() == oracle::rank(v, v.live()));
    for (std::size_t j = 1; j <= s.elements.size(); ++j) {
      CHECK(oracle::independent(v, std::span(s.elements.data(), j)));
    }
    CHECK(is_feasible_sequence(v, s.elements));
    CHECK(s.rounds_parallel <= s.rounds_sequential);
    CHECK(s.permutation.size() == v.live_size());
  }
}

TEST_CASE("large views rank prefixes with the supplied finder") {
  const MatroidView v(generate({"partition", 600, 1, {}}));
  const auto s = random_feasible_sequence(v, kKuw, 2);
  CHECK(s.elements.size() == v.rank());
  CHECK(is_feasible_sequence(v, s.elements));
  CHECK(s.rounds_parallel <= 3 * 25);
}

TEST_CASE("feasible sequence checks") {
  const MatroidView v(fixtures::uniform(5, 2));
  CHECK(is_feasible_sequence(v, {3, 1}));
  CHECK_FALSE(is_feasible_sequence(v, {3, 1, 2}));
  CHECK_FALSE(is_feasible_sequence(v, {3, 3}));
  CHECK_THROWS_AS(random_feasible_sequence(MatroidView(fixtures::uniform(0, 0)), kKuw, 1),
                  DomainError);
}

}  // namespace
}  // namespace parbasis
