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

#ifndef PARBASIS_TYPES_H_
#define PARBASIS_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace parbasis {

// Index into the ground set of a base matroid. Views never renumber.
using ElementId = std::uint32_t;

// Sorted, duplicate-free list of element ids.
using ElementSet = std::vector<ElementId>;

// A minimal dependent set, members sorted ascending.
struct Circuit {
  ElementSet members;

  std::size_t size() const { return members.size(); }
  bool contains(ElementId e) const;
  bool operator==(const Circuit&) const = default;
};

// Base of every error raised by the library.
class MatroidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Element outside the live ground set, malformed set, bad contraction.
class DomainError : public MatroidError {
 public:
  using MatroidError::MatroidError;
};

class BudgetExceeded : public MatroidError {
 public:
  BudgetExceeded(std::size_t requested, std::size_t cap);
  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

class EmptyPeel : public MatroidError {
 public:
  // `no_circuits` is set when no sampled permutation formed a circuit, i.e.
  // the whole live set was observed to be independent.
  EmptyPeel(const std::string& what, bool no_circuits)
      : MatroidError(what), no_circuits_(no_circuits) {}
  bool no_circuits() const { return no_circuits_; }

 private:
  bool no_circuits_;
};

class ContractionFailed : public MatroidError {
 public:
  using MatroidError::MatroidError;
};

class EmptyDeletion : public MatroidError {
 public:
  using MatroidError::MatroidError;
};

class InsufficientSample : public MatroidError {
 public:
  using MatroidError::MatroidError;
};

class NoCircuitForElement : public MatroidError {
 public:
  using MatroidError::MatroidError;
};

// Sorted-set helpers.
ElementSet make_set(std::vector<ElementId> elements);
bool is_sorted_set(std::span<const ElementId> s);
bool set_contains(std::span<const ElementId> s, ElementId e);
bool is_subset(std::span<const ElementId> sub, std::span<const ElementId> super);
ElementSet set_union(std::span<const ElementId> a, std::span<const ElementId> b);
ElementSet set_difference(std::span<const ElementId> a,
                          std::span<const ElementId> b);
ElementSet set_intersection(std::span<const ElementId> a,
                            std::span<const ElementId> b);
std::size_t intersection_size(std::span<const ElementId> a,
                              std::span<const ElementId> b);
bool intersects(std::span<const ElementId> a, std::span<const ElementId> b);

// Dense membership bitmap over base ids; cheap repeated lookups.
class Membership {
 public:
  Membership() = default;
  Membership(std::size_t universe, std::span<const ElementId> members);
  bool contains(ElementId e) const { return e < bits_.size() && bits_[e]; }

 private:
  std::vector<char> bits_;
};

}  // namespace parbasis

#endif  // PARBASIS_TYPES_H_
