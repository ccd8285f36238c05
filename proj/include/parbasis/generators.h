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

// Seeded instance generators for the benchmark families.
//
// Families (n is always the ground set size):
//   uniform        U(n, r), r defaults to n/2
//   partition      blocks of `block` elements (default 8), capacity `cap`
//                  (default 2)
//   graphic_random n random edges on ceil(2n/3)+1 vertices (average degree 3)
//   graphic_complete  the first n edges of the smallest complete graph with
//                  at least n edges
//   linear_gf2, linear_gf7  random `rows` x n matrix (rows defaults to
//                  min(32, n/2)) over GF(2) or GF(7)
//   direct_sum     U(n/2, n/8) + partition on the other half
//   rank1          U(n, 1)
//   free           U(n, n)

#ifndef PARBASIS_GENERATORS_H_
#define PARBASIS_GENERATORS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "parbasis/matroid.h"

namespace parbasis {

using GeneratorParams = std::map<std::string, std::string>;

struct GeneratorSpec {
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  GeneratorParams params;
};

// "gen:family:n=256,seed=3,r=10". Throws DomainError naming the bad field.
GeneratorSpec parse_generator_spec(const std::string& text);
std::string to_string(const GeneratorSpec& spec);

MatroidPtr generate(const GeneratorSpec& spec);

bool is_known_family(const std::string& family);
const std::vector<std::string>& suite_families();

}  // namespace parbasis

#endif  // PARBASIS_GENERATORS_H_
