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


// Small hand-built instances shared by the unit tests.

#ifndef PARBASIS_TESTS_FIXTURES_H_
#define PARBASIS_TESTS_FIXTURES_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "parbasis/estimators.h"
#include "parbasis/generators.h"
#include "parbasis/matroid.h"
#include "parbasis/types.h"
#include "parbasis/view.h"

namespace parbasis::fixtures {

inline MatroidPtr uniform(std::size_t n, std::size_t r) {
  return std::make_shared<UniformMatroid>(n, r);
}

inline MatroidPtr free_matroid(std::size_t n) { return uniform(n, n); }

inline MatroidPtr direct_sum(std::vector<MatroidPtr> parts) {
  return std::make_shared<DirectSumMatroid>(std::move(parts));
}

inline MatroidPtr triangle() {
  return std::make_shared<GraphicMatroid>(
      3, std::vector<GraphicMatroid::Edge>{{0, 1}, {1, 2}, {0, 2}});
}

// Identity columns e_1..e_r followed by two copies of e_{r+1}: the only
// circuit is {r, r+1}.
inline MatroidPtr parallel_pair(std::size_t r) {
  const std::size_t rows = r + 1, cols = r + 2;
  std::vector<std::int64_t> m(rows * cols, 0);
  for (std::size_t c = 0; c < r; ++c) m[c * cols + c] = 1;
  m[r * cols + r] = 1;
  m[r * cols + r + 1] = 1;
  return std::make_shared<LinearMatroid>(rows, cols, 2, std::move(m));
}

inline ElementSet range(ElementId lo, ElementId hi) {
  ElementSet s(hi - lo);
  std::iota(s.begin(), s.end(), lo);
  return s;
}

// A short-circuit deletion instance whose witnesses are real first circuits
// of random orderings: every x in W lies on witnesses[x], which meets S \ R
// in at most l_cap elements.
struct WitnessInstance {
  MatroidView view;
  ElementSet s;
  ElementSet r;
  ElementSet w;
  std::map<ElementId, Circuit> witnesses;
  std::size_t l_cap = 0;
};

inline WitnessInstance random_witness_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const std::vector<std::string> kFamilies = {
      "graphic_random", "graphic_complete", "linear_gf2", "partition", "rank1",
      "uniform"};
  GeneratorSpec spec{kFamilies[rng() % kFamilies.size()], 8 + rng() % 33, seed, {}};
  if (spec.family == "uniform") spec.params["r"] = std::to_string(1 + rng() % 4);
  if (spec.family == "partition") spec.params["cap"] = std::to_string(1 + rng() % 2);
  WitnessInstance out{MatroidView(generate(spec)), {}, {}, {}, {}, 1 + rng() % 6};
  out.s = out.view.live();
  for (ElementId e : out.s) {
    if (rng() % 3 == 0) out.r.push_back(e);
  }
  const ElementSet free_part = set_difference(out.s, out.r);
  std::vector<ElementId> order = out.s;
  for (int trial = 0; trial < 200; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    const auto fc = first_circuit(out.view, order);
    if (!fc) break;
    const auto& c = fc->circuit;
    if (intersection_size(c.members, free_part) > out.l_cap) continue;
    for (ElementId x : c.members) {
      if (set_contains(free_part, x) && !out.witnesses.count(x) && rng() % 4 != 0) {
        out.witnesses.emplace(x, c);
      }
    }
  }
  for (const auto& [x, c] : out.witnesses) out.w.push_back(x);
  return out;
}

}  // namespace parbasis::fixtures

#endif  // PARBASIS_TESTS_FIXTURES_H_
