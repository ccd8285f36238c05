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

#ifndef PARBASIS_VIEW_H_
#define PARBASIS_VIEW_H_

#include <memory>
#include <span>
#include <vector>

#include "parbasis/matroid.h"
#include "parbasis/types.h"

namespace parbasis {

// A minor of a base matroid obtained by deleting and contracting disjoint
// sets. T is independent in the view iff T together with the contracted set
// is independent in the base; queries may only mention live elements (those
// neither deleted nor contracted).
//
// Views are values: with_deleted/with_contracted return new views.
class MatroidView {
 public:
  explicit MatroidView(MatroidPtr base);

  const Matroid& base() const { return *base_; }
  const MatroidPtr& base_ptr() const { return base_; }
  std::size_t universe() const { return base_->ground_size(); }

  const ElementSet& live() const { return live_; }
  const ElementSet& deleted() const { return deleted_; }
  const ElementSet& contracted() const { return contracted_; }
  std::size_t live_size() const { return live_.size(); }
  bool is_live(ElementId e) const {
    return e < status_.size() && status_[e] == kLive;
  }

  // Throws DomainError if `elements` contains a non-live id.
  void require_live(std::span<const ElementId> elements) const;

  // Requires elements ⊆ live.
  MatroidView with_deleted(std::span<const ElementId> elements) const;
  // Requires elements ⊆ live and independent in this view (so that the
  // total contracted set stays independent in the base).
  MatroidView with_contracted(std::span<const ElementId> elements) const;
  // Deletes every live element outside `keep`.
  MatroidView restricted_to(std::span<const ElementId> keep) const;

  // Direct oracle access, not routed through a scheduler. Used by
  // verification code and by the scheduler itself.
  bool is_independent(std::span<const ElementId> elements) const;
  std::size_t rank(std::span<const ElementId> elements) const;
  std::size_t rank() const { return rank(live_); }

  // State with the contracted set loaded and marked as the baseline.
  std::unique_ptr<IndependenceState> new_state() const;
  // Circuit of this view inside (current set of `state`) + e, where the state
  // came from new_state() and !state.can_add(e). Contracted elements are
  // stripped from the base circuit.
  void circuit_with(const IndependenceState& state, ElementId e,
                    ElementSet& out) const;

 private:
  enum Status : char { kLive = 0, kDeleted = 1, kContracted = 2 };
  void rebuild_lists();

  MatroidPtr base_;
  std::vector<char> status_;
  ElementSet live_;
  ElementSet deleted_;
  ElementSet contracted_;
};

}  // namespace parbasis

#endif  // PARBASIS_VIEW_H_
