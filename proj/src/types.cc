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

#include "parbasis/types.h"

#include <algorithm>
#include <iterator>

namespace parbasis {

bool Circuit::contains(ElementId e) const { return set_contains(members, e); }

BudgetExceeded::BudgetExceeded(std::size_t requested, std::size_t cap)
    : MatroidError("query batch of size " + std::to_string(requested) +
                   " exceeds per-round budget " + std::to_string(cap)),
      requested_(requested),
      cap_(cap) {}

ElementSet make_set(std::vector<ElementId> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

bool is_sorted_set(std::span<const ElementId> s) {
  return std::adjacent_find(s.begin(), s.end(),
                            [](ElementId a, ElementId b) { return a >= b; }) ==
         s.end();
}

bool set_contains(std::span<const ElementId> s, ElementId e) {
  return std::binary_search(s.begin(), s.end(), e);
}

bool is_subset(std::span<const ElementId> sub,
               std::span<const ElementId> super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

ElementSet set_union(std::span<const ElementId> a,
                     std::span<const ElementId> b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

ElementSet set_difference(std::span<const ElementId> a,
                          std::span<const ElementId> b) {
  ElementSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

ElementSet set_intersection(std::span<const ElementId> a,
                            std::span<const ElementId> b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::size_t intersection_size(std::span<const ElementId> a,
                              std::span<const ElementId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

bool intersects(std::span<const ElementId> a, std::span<const ElementId> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

Membership::Membership(std::size_t universe,
                       std::span<const ElementId> members)
    : bits_(universe, 0) {
  for (ElementId e : members) {
    if (e >= bits_.size()) bits_.resize(e + 1, 0);
    bits_[e] = 1;
  }
}

}  // namespace parbasis
