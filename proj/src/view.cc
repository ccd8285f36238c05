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

#include "parbasis/view.h"

#include <algorithm>

namespace parbasis {

MatroidView::MatroidView(MatroidPtr base)
    : base_(std::move(base)), status_(base_->ground_size(), kLive) {
  rebuild_lists();
}

void MatroidView::rebuild_lists() {
  live_.clear();
  deleted_.clear();
  contracted_.clear();
  for (ElementId e = 0; e < status_.size(); ++e) {
    switch (status_[e]) {
      case kLive:
        live_.push_back(e);
        break;
      case kDeleted:
        deleted_.push_back(e);
        break;
      default:
        contracted_.push_back(e);
    }
  }
}

void MatroidView::require_live(std::span<const ElementId> elements) const {
  for (ElementId e : elements) {
    if (!is_live(e)) {
      throw DomainError("element " + std::to_string(e) +
                        " is not in the live ground set");
    }
  }
}

MatroidView MatroidView::with_deleted(
    std::span<const ElementId> elements) const {
  require_live(elements);
  MatroidView out = *this;
  for (ElementId e : elements) out.status_[e] = kDeleted;
  out.rebuild_lists();
  return out;
}

MatroidView MatroidView::with_contracted(
    std::span<const ElementId> elements) const {
  require_live(elements);
  if (!is_independent(elements)) {
    throw DomainError("contracted set must be independent");
  }
  MatroidView out = *this;
  for (ElementId e : elements) out.status_[e] = kContracted;
  out.rebuild_lists();
  return out;
}

MatroidView MatroidView::restricted_to(
    std::span<const ElementId> keep) const {
  require_live(keep);
  const ElementSet sorted = make_set({keep.begin(), keep.end()});
  return with_deleted(set_difference(live_, sorted));
}

bool MatroidView::is_independent(std::span<const ElementId> elements) const {
  require_live(elements);
  {
    std::vector<ElementId> sorted(elements.begin(), elements.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DomainError("query contains a repeated element");
    }
  }
  auto state = new_state();
  for (ElementId e : elements) {
    if (!state->can_add(e)) return false;
    state->add(e);
  }
  return true;
}

std::size_t MatroidView::rank(std::span<const ElementId> elements) const {
  require_live(elements);
  auto state = new_state();
  const std::size_t base = state->size();
  for (ElementId e : elements) {
    if (state->can_add(e)) state->add(e);
  }
  return state->size() - base;
}

std::unique_ptr<IndependenceState> MatroidView::new_state() const {
  auto state = base_->new_state();
  for (ElementId e : contracted_) state->add(e);
  state->mark_baseline();
  return state;
}

void MatroidView::circuit_with(const IndependenceState& state, ElementId e,
                               ElementSet& out) const {
  state.circuit_with(e, out);
  if (contracted_.empty()) return;
  std::erase_if(out, [this](ElementId x) { return status_[x] == kContracted; });
}

}  // namespace parbasis
