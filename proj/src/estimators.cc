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

#include "parbasis/estimators.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace parbasis {
namespace {

void require_subset(std::span<const ElementId> t, const ElementSet& target) {
  for (ElementId e : t) {
    if (!set_contains(target, e)) {
      throw DomainError("element " + std::to_string(e) +
                        " is outside the sampled set");
    }
  }
}

std::size_t universe_of(const ElementSet& target) {
  return target.empty() ? 0 : static_cast<std::size_t>(target.back()) + 1;
}

std::size_t outside_count(const Circuit& c, const Membership& t) {
  std::size_t k = 0;
  for (ElementId e : c.members) k += t.contains(e) ? 0 : 1;
  return k;
}

}  // namespace

std::size_t CircuitSample::formed() const {
  return static_cast<std::size_t>(
      std::count_if(circuits.begin(), circuits.end(),
                    [](const auto& c) { return c.has_value(); }));
}

std::size_t CircuitSample::total_circuit_size() const {
  std::size_t total = 0;
  for (const auto& c : circuits) total += c ? c->size() : 0;
  return total;
}

double CircuitSample::mean_circuit_size() const {
  if (circuits.empty()) return 0.0;
  return static_cast<double>(total_circuit_size()) /
         static_cast<double>(circuits.size());
}

std::size_t effective_samples(std::size_t m, std::size_t set_size,
                              std::size_t budget_cap) {
  if (set_size == 0) return m;
  return std::max<std::size_t>(1, std::min(m, budget_cap / set_size));
}

CircuitSample sample_first_circuits(Scheduler& sched, const MatroidView& view,
                                    const ElementSet& s, std::size_t m) {
  if (m == 0) throw DomainError("sample count must be positive");
  if (!is_sorted_set(s)) throw DomainError("sample target must be a set");
  view.require_live(s);
  CircuitSample out;
  out.target = s;
  const std::size_t count = effective_samples(m, s.size(), sched.budget_cap());
  Rng rng = sched.fresh_rng("first-circuits");
  std::vector<std::uint64_t> seeds(count);
  for (auto& seed : seeds) seed = rng();

  QueryBatch prefixes;
  for (auto seed : seeds) prefixes.add(Query::random_prefixes(view, s, seed));
  const auto first = sched.submit_batch(prefixes);

  out.independent_prefix.resize(count);
  out.circuits.resize(count);
  PermutationSource source(s);
  QueryBatch removals;
  std::vector<std::size_t> owner;
  for (std::size_t j = 0; j < count; ++j) {
    out.independent_prefix[j] = first[j].prefix;
    if (first[j].prefix == s.size()) continue;
    removals.add(
        Query::removals(view, source.prefix(seeds[j], first[j].prefix + 1)));
    owner.push_back(j);
  }
  if (removals.empty()) return out;
  const auto second = sched.submit_batch(removals);
  for (std::size_t k = 0; k < owner.size(); ++k) {
    const auto& set = removals.queries()[k].elements;
    Circuit c;
    for (std::size_t i = 0; i < set.size(); ++i) {
      // P \ {x} independent exactly when x lies on the unique circuit of P.
      if (second[k].flags[i]) c.members.push_back(set[i]);
    }
    std::sort(c.members.begin(), c.members.end());
    if (sched.verify()) assert_circuit(view, c);
    out.circuits[owner[k]] = std::move(c);
  }
  return out;
}

std::optional<FirstCircuit> first_circuit(const MatroidView& view,
                                          std::span<const ElementId> order) {
  view.require_live(order);
  auto state = view.new_state();
  for (std::size_t j = 0; j < order.size(); ++j) {
    if (state->can_add(order[j])) {
      state->add(order[j]);
      continue;
    }
    FirstCircuit fc;
    fc.prefix_len = j + 1;
    view.circuit_with(*state, order[j], fc.circuit.members);
    return fc;
  }
  return std::nullopt;
}

double estimate_q(const CircuitSample& sample, std::span<const ElementId> t) {
  require_subset(t, sample.target);
  if (sample.size() == 0) return 0.0;
  const Membership in_t(universe_of(sample.target), t);
  std::size_t inside = 0;
  for (const auto& c : sample.circuits) {
    if (c && std::all_of(c->members.begin(), c->members.end(),
                         [&](ElementId e) { return in_t.contains(e); })) {
      ++inside;
    }
  }
  return static_cast<double>(inside) / static_cast<double>(sample.size());
}

double estimate_hitting(const CircuitSample& sample,
                        std::span<const ElementId> t) {
  require_subset(t, sample.target);
  if (sample.size() == 0) return 0.0;
  const Membership in_t(universe_of(sample.target), t);
  std::size_t hit = 0;
  for (const auto& c : sample.circuits) {
    if (c && std::any_of(c->members.begin(), c->members.end(),
                         [&](ElementId e) { return in_t.contains(e); })) {
      ++hit;
    }
  }
  return static_cast<double>(hit) / static_cast<double>(sample.size());
}

AlphaEstimate alpha_from_prefixes(std::span<const std::size_t> prefix_lengths,
                                  std::size_t set_size) {
  AlphaEstimate a;
  a.target_size = set_size;
  a.value = set_size + 1;
  const std::size_t m = prefix_lengths.size();
  if (m == 0 || set_size == 0) return a;
  // at_least[k] = #(L >= k).
  std::vector<std::size_t> at_least(set_size + 2, 0);
  for (std::size_t len : prefix_lengths) ++at_least[std::min(len, set_size)];
  for (std::size_t k = set_size; k-- > 0;) at_least[k] += at_least[k + 1];
  for (std::size_t k = 1; k <= set_size; ++k) {
    if (2 * at_least[k] <= m) {
      a.value = k;
      break;
    }
  }
  return a;
}

AlphaEstimate alpha_from_sample(const CircuitSample& sample) {
  return alpha_from_prefixes(sample.independent_prefix, sample.target.size());
}

AlphaEstimate estimate_alpha(Scheduler& sched, const MatroidView& view,
                             const ElementSet& s, std::size_t m_alpha) {
  if (s.empty()) throw DomainError("alpha of an empty set");
  if (m_alpha == 0) throw DomainError("sample count must be positive");
  if (!is_sorted_set(s)) throw DomainError("alpha target must be a set");
  const std::size_t count =
      effective_samples(m_alpha, s.size(), sched.budget_cap());
  Rng rng = sched.fresh_rng("alpha");
  QueryBatch batch;
  for (std::size_t j = 0; j < count; ++j) {
    batch.add(Query::random_prefixes(view, s, rng()));
  }
  const auto answers = sched.submit_batch(batch);
  std::vector<std::size_t> lengths;
  lengths.reserve(count);
  for (const auto& a : answers) lengths.push_back(a.prefix);
  return alpha_from_prefixes(lengths, s.size());
}

MarginalTable::MarginalTable(const CircuitSample& sample)
    : elements_(sample.target),
      hits_(sample.target.size(), 0),
      samples_(sample.size()) {
  for (const auto& c : sample.circuits) {
    if (!c) continue;
    for (ElementId e : c->members) {
      const auto it =
          std::lower_bound(elements_.begin(), elements_.end(), e);
      ++hits_[static_cast<std::size_t>(it - elements_.begin())];
      ++total_hits_;
    }
  }
}

std::size_t MarginalTable::hits(ElementId e) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
  if (it == elements_.end() || *it != e) {
    throw DomainError("element " + std::to_string(e) +
                      " is outside the sampled set");
  }
  return hits_[static_cast<std::size_t>(it - elements_.begin())];
}

double MarginalTable::p(ElementId e) const {
  if (samples_ == 0) return 0.0;
  return static_cast<double>(hits(e)) / static_cast<double>(samples_);
}

double MarginalTable::sum_p() const {
  if (samples_ == 0) return 0.0;
  return static_cast<double>(total_hits_) / static_cast<double>(samples_);
}

WEstimate estimate_w(const CircuitSample& sample, ElementId i,
                     std::span<const ElementId> t, std::size_t group_size,
                     std::size_t groups) {
  require_subset(std::span<const ElementId>(&i, 1), sample.target);
  require_subset(t, sample.target);
  if (group_size == 0 || groups == 0) {
    throw DomainError("group size and count must be positive");
  }
  const Membership in_t(universe_of(sample.target), t);
  std::vector<std::size_t> outside;
  const Circuit* best = nullptr;
  std::size_t best_outside = std::numeric_limits<std::size_t>::max();
  for (const auto& c : sample.circuits) {
    if (!c || !c->contains(i)) continue;
    const std::size_t k = outside_count(*c, in_t);
    outside.push_back(k);
    if (k < best_outside) {
      best_outside = k;
      best = &*c;
    }
  }
  if (outside.empty()) {
    throw NoCircuitForElement("no sampled circuit contains element " +
                              std::to_string(i));
  }
  if (outside.size() < group_size * groups) {
    throw InsufficientSample(
        "element " + std::to_string(i) + " has " +
        std::to_string(outside.size()) + " sampled circuits, need " +
        std::to_string(group_size * groups));
  }
  double total = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    const auto begin = outside.begin() + static_cast<std::ptrdiff_t>(g * group_size);
    total += static_cast<double>(
        *std::min_element(begin, begin + static_cast<std::ptrdiff_t>(group_size)));
  }
  return {total / static_cast<double>(groups), *best};
}

std::optional<Circuit> best_witness(const CircuitSample& sample, ElementId i,
                                    std::span<const ElementId> t) {
  const Membership in_t(universe_of(sample.target), t);
  const Circuit* best = nullptr;
  std::size_t best_outside = std::numeric_limits<std::size_t>::max();
  for (const auto& c : sample.circuits) {
    if (!c || !c->contains(i)) continue;
    const std::size_t k = outside_count(*c, in_t);
    if (k < best_outside) {
      best_outside = k;
      best = &*c;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

void assert_circuit(const MatroidView& view, const Circuit& c) {
  if (c.members.empty() || view.is_independent(c.members)) {
    throw std::logic_error("extracted circuit is not dependent");
  }
  std::vector<ElementId> rest;
  for (std::size_t skip = 0; skip < c.members.size(); ++skip) {
    rest.clear();
    for (std::size_t k = 0; k < c.members.size(); ++k) {
      if (k != skip) rest.push_back(c.members[k]);
    }
    if (!view.is_independent(rest)) {
      throw std::logic_error("extracted circuit is not minimal");
    }
  }
}

}  // namespace parbasis
