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

// Sampling statistics over a set S built from permutation-induced first
// circuits: for a uniformly random ordering of S, the first circuit is the
// unique circuit inside the shortest dependent prefix.

#ifndef PARBASIS_ESTIMATORS_H_
#define PARBASIS_ESTIMATORS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "parbasis/scheduler.h"
#include "parbasis/types.h"
#include "parbasis/view.h"

namespace parbasis {

struct CircuitSample {
  ElementSet target;
  // Longest independent prefix of each sampled ordering; equals |target|
  // when the ordering never became dependent.
  std::vector<std::size_t> independent_prefix;
  // First circuit of each ordering, in sampling order.
  std::vector<std::optional<Circuit>> circuits;

  std::size_t size() const { return circuits.size(); }
  std::size_t formed() const;
  // Sum of first-circuit sizes over all samples (a missing circuit counts 0).
  std::size_t total_circuit_size() const;
  double mean_circuit_size() const;
};

// Number of orderings actually drawn when m are requested: two rounds of cost
// up to m*|S| each must fit the per-round budget.
std::size_t effective_samples(std::size_t m, std::size_t set_size,
                              std::size_t budget_cap);

// Draws min(m, cap/|S|) uniform orderings of S and extracts their first
// circuits. Two rounds: all prefixes of every ordering, then all single
// removals of every first dependent prefix (skipped when none formed).
CircuitSample sample_first_circuits(Scheduler& sched, const MatroidView& view,
                                    const ElementSet& s, std::size_t m);

// One ordering, evaluated directly against the oracle (no rounds charged).
// Returns the length of the first dependent prefix and its circuit, or
// nullopt when the whole ordering is independent.
struct FirstCircuit {
  std::size_t prefix_len = 0;
  Circuit circuit;
};
std::optional<FirstCircuit> first_circuit(const MatroidView& view,
                                          std::span<const ElementId> order);

// Fraction of samples whose circuit formed and lies inside t.
double estimate_q(const CircuitSample& sample, std::span<const ElementId> t);
// Fraction of samples whose circuit meets t.
double estimate_hitting(const CircuitSample& sample,
                        std::span<const ElementId> t);

struct AlphaEstimate {
  std::size_t value = 0;
  std::size_t target_size = 0;
  bool sentinel() const { return value > target_size; }
};

// Least k with empirical Pr[random k-subset independent] <= 1/2, sentinel
// |S|+1 when there is none. Prefixes of one uniform ordering are uniform
// subsets of every size, so the frequencies for all k come from the same
// orderings: f_k = #(independent prefix >= k) / m.
AlphaEstimate alpha_from_prefixes(std::span<const std::size_t> prefix_lengths,
                                  std::size_t set_size);
AlphaEstimate alpha_from_sample(const CircuitSample& sample);
// One round.
AlphaEstimate estimate_alpha(Scheduler& sched, const MatroidView& view,
                             const ElementSet& s, std::size_t m_alpha);

class MarginalTable {
 public:
  explicit MarginalTable(const CircuitSample& sample);
  const ElementSet& elements() const { return elements_; }
  std::size_t samples() const { return samples_; }
  std::size_t hits(ElementId e) const;
  double p(ElementId e) const;
  std::size_t total_hits() const { return total_hits_; }
  double sum_p() const;

 private:
  ElementSet elements_;
  std::vector<std::size_t> hits_;
  std::size_t samples_;
  std::size_t total_hits_ = 0;
};

struct WEstimate {
  double w = 0.0;
  Circuit witness;
};

// Circuits containing i, in sampling order, split into `groups` groups of
// `group_size`; w is the mean group minimum of |C \ t|. The witness is the
// minimizer over all circuits containing i.
WEstimate estimate_w(const CircuitSample& sample, ElementId i,
                     std::span<const ElementId> t, std::size_t group_size,
                     std::size_t groups);

// Sampled circuit containing i minimizing |C \ t|, or nullopt if none.
std::optional<Circuit> best_witness(const CircuitSample& sample, ElementId i,
                                    std::span<const ElementId> t);

// Checks that c is dependent and every single removal is independent; throws
// std::logic_error otherwise. Direct oracle access.
void assert_circuit(const MatroidView& view, const Circuit& c);

}  // namespace parbasis

#endif  // PARBASIS_ESTIMATORS_H_
