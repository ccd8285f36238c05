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

#include "parbasis/progress.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "parbasis/decomposition.h"

namespace parbasis {

std::size_t contraction_length(std::size_t n, std::size_t set_size,
                               const AlphaEstimate& alpha) {
  if (n == 0) return 0;
  if (set_size == 0 || alpha.value > set_size) return n;
  const double raw = static_cast<double>(alpha.value) * static_cast<double>(n) /
                     (20.0 * static_cast<double>(set_size));
  return std::clamp<std::size_t>(static_cast<std::size_t>(raw), 1, n);
}

ElementSet contract_independent(Scheduler& sched, const MatroidView& view,
                                std::size_t length,
                                const AlgorithmConfig& config) {
  const ElementSet& pool = view.live();
  if (pool.empty()) return {};
  length = std::clamp<std::size_t>(length, 1, pool.size());
  const std::size_t trials = std::max<std::size_t>(1, config.contraction_trials);
  Rng rng = sched.fresh_rng("contract");
  std::vector<std::uint64_t> seeds(trials);
  for (auto& s : seeds) s = rng();
  PermutationSource source(pool);
  QueryBatch batch;
  const bool fixed = config.contraction_mode == ContractionMode::kFixedLength;
  for (auto seed : seeds) {
    batch.add(fixed ? Query::subset(view, source.prefix(seed, length))
                    : Query::random_prefixes(view, pool, seed));
  }
  const auto answers = sched.submit_batch(batch);
  std::optional<ElementSet> found;
  if (fixed) {
    for (std::size_t j = 0; j < trials && !found; ++j) {
      if (answers[j].independent) found = make_set(batch.queries()[j].elements);
    }
  } else {
    std::size_t best = 0;
    for (std::size_t j = 1; j < trials; ++j) {
      if (answers[j].prefix > answers[best].prefix) best = j;
    }
    if (answers[best].prefix >= length) {
      found = make_set(source.prefix(seeds[best], answers[best].prefix));
    }
  }
  if (!found) {
    throw ContractionFailed("no sampled prefix of length " +
                            std::to_string(length) + " was independent");
  }
  if (sched.verify() && !view.is_independent(*found)) {
    throw std::logic_error("contracted set is dependent");
  }
  return *found;
}

ElementSet contract_with_retry(Scheduler& sched, const MatroidView& view,
                               std::size_t length,
                               const AlgorithmConfig& config) {
  while (true) {
    try {
      return contract_independent(sched, view, length, config);
    } catch (const ContractionFailed&) {
      if (length <= 1) throw;
      length /= 2;
    }
  }
}

std::string to_string(DeletionMethod m) {
  switch (m) {
    case DeletionMethod::kCoreRecovery:
      return "core_recovery";
    case DeletionMethod::kNonCoreMass:
      return "non_core_mass";
    case DeletionMethod::kShortCircuit:
      return "short_circuit";
    default:
      return "redundant_recovery";
  }
}

RecoveryShape recovery_shape(std::size_t set_size, const AlphaEstimate& alpha,
                             std::size_t ambient_n,
                             const AlgorithmConfig& config) {
  RecoveryShape shape;
  const double t = std::ceil(config.recovery_factor * log2n(ambient_n) *
                             static_cast<double>(alpha.value));
  shape.t = static_cast<std::size_t>(std::max(1.0, t));
  shape.probes = set_size / (4 * shape.t);
  return shape;
}

std::vector<std::optional<DeletionResult>> recover_redundant_batch(
    Scheduler& sched, const std::vector<RecoveryRequest>& requests,
    std::size_t ambient_n, const AlgorithmConfig& config) {
  struct Probe {
    std::size_t request;
    std::vector<ElementId> prefix;
    ElementSet candidates;
  };
  std::vector<Probe> probes;
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const auto& req = requests[r];
    if (req.view == nullptr) throw DomainError("recovery request without a view");
    req.view->require_live(req.set);
    const RecoveryShape shape =
        recovery_shape(req.set.size(), req.alpha, ambient_n, config);
    if (shape.probes == 0) continue;
    Rng rng = sched.fresh_rng("recover");
    PermutationSource source(req.set);
    for (std::size_t i = 0; i < shape.probes; ++i) {
      Probe p;
      p.request = r;
      p.prefix = source.prefix(rng(), shape.t);
      p.candidates = set_difference(req.set, make_set(p.prefix));
      probes.push_back(std::move(p));
    }
  }

  std::vector<std::optional<DeletionResult>> out(requests.size());
  for (const auto& p : probes) {
    if (!out[p.request]) {
      out[p.request] = DeletionResult{};
      out[p.request]->method = DeletionMethod::kRedundantRecovery;
    }
  }
  if (probes.empty()) return out;

  // Pack probes into as few rounds as the budget allows.
  std::vector<QueryAnswer> answers;
  answers.reserve(probes.size());
  std::size_t rounds = 0;
  QueryBatch batch;
  auto flush = [&] {
    if (batch.empty()) return;
    auto part = sched.submit_batch(batch);
    ++rounds;
    for (auto& a : part) answers.push_back(std::move(a));
    batch = QueryBatch();
  };
  for (const auto& p : probes) {
    Query q = Query::span_probe(*requests[p.request].view, p.prefix,
                                p.candidates);
    if (!batch.empty() && batch.cost() + q.cost() > sched.budget_cap()) flush();
    batch.add(std::move(q));
  }
  flush();

  std::vector<std::vector<ElementId>> marked(requests.size());
  std::vector<std::vector<ElementId>> kept(requests.size());
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const auto& p = probes[k];
    const auto& a = answers[k];
    std::vector<ElementId> spanned;
    for (std::size_t i = 0; i < p.candidates.size(); ++i) {
      if (a.flags[i]) spanned.push_back(p.candidates[i]);
    }
    if (sched.verify() && !spanned.empty()) {
      // Every marked element is spanned by the independent part of A_i.
      const MatroidView& view = *requests[p.request].view;
      const std::vector<ElementId> base(p.prefix.begin(),
                                        p.prefix.begin() +
                                            static_cast<std::ptrdiff_t>(a.prefix));
      const std::size_t r0 = view.rank(base);
      for (ElementId x : spanned) {
        std::vector<ElementId> with = base;
        with.push_back(x);
        if (view.rank(with) != r0) {
          throw std::logic_error("recovered element is not spanned");
        }
      }
    }
    marked[p.request].insert(marked[p.request].end(), spanned.begin(),
                             spanned.end());
    kept[p.request].insert(kept[p.request].end(), p.prefix.begin(),
                           p.prefix.end());
  }
  for (std::size_t r = 0; r < requests.size(); ++r) {
    if (!out[r]) continue;
    out[r]->kept_witness = make_set(std::move(kept[r]));
    out[r]->deleted =
        set_difference(make_set(std::move(marked[r])), out[r]->kept_witness);
    out[r]->rounds_charged = rounds;
  }
  return out;
}

DeletionResult recover_redundant(Scheduler& sched, const MatroidView& view,
                                 const ElementSet& s,
                                 const AlphaEstimate& alpha,
                                 std::size_t ambient_n,
                                 const AlgorithmConfig& config) {
  auto results = recover_redundant_batch(
      sched, {RecoveryRequest{&view, s, alpha}}, ambient_n, config);
  if (!results[0]) {
    const RecoveryShape shape = recovery_shape(s.size(), alpha, ambient_n, config);
    throw EmptyDeletion("set of size " + std::to_string(s.size()) +
                        " is smaller than 4t = " + std::to_string(4 * shape.t));
  }
  return std::move(*results[0]);
}

CoreSplit compute_core(const MarginalTable& marginals,
                       const AlphaEstimate& alpha) {
  CoreSplit split;
  const auto& s = marginals.elements();
  if (s.empty()) return split;
  const double ratio =
      static_cast<double>(alpha.value) / static_cast<double>(s.size());
  split.tau = ratio * ratio;
  for (ElementId e : s) {
    const double p = marginals.p(e);
    if (p >= split.tau) {
      split.core.push_back(e);
    } else {
      split.non_core.push_back(e);
      split.non_core_mass += p;
    }
  }
  return split;
}

DeletionResult short_circuit_bulk_delete(
    const ElementSet& w, const std::map<ElementId, Circuit>& witnesses,
    const ElementSet& s, const ElementSet& r, std::size_t l_cap) {
  const ElementSet free_part = set_difference(s, r);
  std::size_t universe = 0;
  for (ElementId x : s) universe = std::max<std::size_t>(universe, x + 1);
  const Membership in_free(universe, free_part);
  const Membership in_s(universe, s);
  const Membership in_w(universe, w);
  for (ElementId x : w) {
    const std::string who = "element " + std::to_string(x);
    if (!in_free.contains(x)) throw DomainError(who + " is not in S \\ R");
    const auto it = witnesses.find(x);
    if (it == witnesses.end()) throw DomainError(who + " has no witness");
    const Circuit& c = it->second;
    if (!c.contains(x)) throw DomainError(who + " is not on its witness");
    std::size_t outside = 0;
    for (ElementId y : c.members) {
      if (!in_s.contains(y)) {
        throw DomainError(who + " has a witness leaving S");
      }
      outside += in_free.contains(y) ? 1 : 0;
    }
    if (outside > l_cap) {
      throw DomainError(who + " has a witness meeting S \\ R in " +
                        std::to_string(outside) + " > " +
                        std::to_string(l_cap) + " elements");
    }
  }
  DeletionResult out;
  out.method = DeletionMethod::kShortCircuit;
  std::vector<char> processed(universe, 0);
  for (ElementId v : w) {
    if (processed[v]) continue;
    processed[v] = 1;
    out.deleted.push_back(v);
    for (ElementId y : witnesses.at(v).members) {
      if (y == v || !in_w.contains(y) || processed[y]) continue;
      processed[y] = 1;
      out.kept_witness.push_back(y);
    }
  }
  std::sort(out.kept_witness.begin(), out.kept_witness.end());
  return out;
}

SetProfile profile_set(Scheduler& sched, const MatroidView& view,
                       const ElementSet& s, const AlgorithmConfig& config) {
  SetProfile profile;
  profile.set = s;
  profile.sample = sample_first_circuits(sched, view, s, config.samples);
  profile.alpha = alpha_from_sample(profile.sample);
  profile.split = compute_core(MarginalTable(profile.sample), profile.alpha);
  return profile;
}

double witness_cutoff(double non_core_mass, std::size_t ambient_n,
                      const AlgorithmConfig& config) {
  return config.witness_factor * log2n(ambient_n) *
         std::max(non_core_mass, 1.0);
}

DeletionResult short_circuit_route(const SetProfile& profile,
                                   std::size_t ambient_n,
                                   const AlgorithmConfig& config) {
  const auto& split = profile.split;
  const std::size_t l_cap = static_cast<std::size_t>(
      witness_cutoff(split.non_core_mass, ambient_n, config));
  std::size_t universe = 0;
  for (ElementId x : profile.set) universe = std::max<std::size_t>(universe, x + 1);
  const Membership in_core(universe, split.core);
  // Best circuit per element, by |C \ core|, in one pass over the sample.
  std::vector<std::size_t> best_size(universe,
                                     std::numeric_limits<std::size_t>::max());
  std::vector<const Circuit*> best(universe, nullptr);
  for (const auto& c : profile.sample.circuits) {
    if (!c) continue;
    std::size_t outside = 0;
    for (ElementId e : c->members) outside += in_core.contains(e) ? 0 : 1;
    for (ElementId e : c->members) {
      if (outside < best_size[e]) {
        best_size[e] = outside;
        best[e] = &*c;
      }
    }
  }
  ElementSet w;
  std::map<ElementId, Circuit> witnesses;
  for (ElementId x : split.non_core) {
    if (best[x] != nullptr && best_size[x] <= l_cap) {
      w.push_back(x);
      witnesses.emplace(x, *best[x]);
    }
  }
  return short_circuit_bulk_delete(w, witnesses, profile.set, split.core, l_cap);
}

std::vector<DeletionResult> balanced_delete_batch(
    Scheduler& sched, const MatroidView& view,
    const std::vector<const SetProfile*>& profiles, std::size_t ambient_n,
    const AlgorithmConfig& config) {
  std::vector<RecoveryRequest> requests;
  requests.reserve(profiles.size());
  for (const SetProfile* p : profiles) {
    requests.push_back(RecoveryRequest{&view, p->set, p->alpha});
  }
  auto recovered = recover_redundant_batch(sched, requests, ambient_n, config);
  std::vector<DeletionResult> out(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const SetProfile& p = *profiles[i];
    DeletionResult mass =
        recovered[i] ? std::move(*recovered[i]) : DeletionResult{};
    if (p.good()) {
      mass.method = DeletionMethod::kCoreRecovery;
      out[i] = std::move(mass);
      continue;
    }
    mass.method = DeletionMethod::kNonCoreMass;
    DeletionResult shortcut = short_circuit_route(p, ambient_n, config);
    shortcut.rounds_charged = mass.rounds_charged;
    out[i] = shortcut.deleted.size() > mass.deleted.size() ? std::move(shortcut)
                                                           : std::move(mass);
  }
  return out;
}

DeletionResult balanced_delete(Scheduler& sched, const MatroidView& view,
                               const SetProfile& profile,
                               std::size_t ambient_n,
                               const AlgorithmConfig& config) {
  auto results =
      balanced_delete_batch(sched, view, {&profile}, ambient_n, config);
  if (results[0].deleted.empty()) {
    throw EmptyDeletion("no redundant element found in a set of size " +
                        std::to_string(profile.set.size()));
  }
  return std::move(results[0]);
}

bool deletion_is_sound(const MatroidView& view, const ElementSet& deleted) {
  const ElementSet rest = set_difference(view.live(), deleted);
  return view.rank(rest) == view.rank();
}

}  // namespace parbasis
