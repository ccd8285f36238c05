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

#include "parbasis/decomposition.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

namespace parbasis {
namespace {

double harmonic(std::size_t k) {
  double h = 0.0;
  for (std::size_t i = 1; i <= k; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

// Hit counts of the sampled circuits that still lie inside the shrinking set
// S. Removing T discards every circuit meeting T.
class HitTracker {
 public:
  HitTracker(const CircuitSample& sample, std::size_t universe)
      : index_(universe, kAbsent),
        elements_(sample.target),
        in_s_(sample.target.size(), 1),
        hits_(sample.target.size(), 0),
        samples_(sample.size()) {
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      index_[elements_[k]] = static_cast<std::uint32_t>(k);
    }
    std::vector<std::size_t> degree(elements_.size() + 1, 0);
    for (const auto& c : sample.circuits) {
      if (!c) continue;
      circuits_.push_back(&c->members);
      for (ElementId e : c->members) ++degree[index_[e] + 1];
    }
    alive_.assign(circuits_.size(), 1);
    alive_count_ = circuits_.size();
    std::partial_sum(degree.begin(), degree.end(), degree.begin());
    offsets_ = degree;
    incidence_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t c = 0; c < circuits_.size(); ++c) {
      for (ElementId e : *circuits_[c]) {
        const auto k = index_[e];
        incidence_[fill[k]++] = static_cast<std::uint32_t>(c);
        ++hits_[k];
      }
    }
  }

  std::size_t samples() const { return samples_; }
  std::size_t alive() const { return alive_count_; }
  const ElementSet& elements() const { return elements_; }
  bool in_s(std::size_t k) const { return in_s_[k]; }
  std::size_t hits(std::size_t k) const { return hits_[k]; }
  std::size_t index(ElementId e) const { return index_[e]; }

  // Returns the number of circuits discarded.
  std::size_t remove(std::size_t k) {
    in_s_[k] = 0;
    std::size_t lost = 0;
    for (std::size_t p = offsets_[k]; p < offsets_[k + 1]; ++p) {
      const auto c = incidence_[p];
      if (!alive_[c]) continue;
      alive_[c] = 0;
      --alive_count_;
      ++lost;
      for (ElementId e : *circuits_[c]) --hits_[index_[e]];
    }
    return lost;
  }

  template <typename Fn>
  void for_each_alive(Fn fn) const {
    for (std::size_t c = 0; c < circuits_.size(); ++c) {
      if (alive_[c]) fn(*circuits_[c]);
    }
  }

 private:
  std::vector<std::uint32_t> index_;
  ElementSet elements_;
  std::vector<char> in_s_;
  std::vector<std::size_t> hits_;
  std::size_t samples_;
  std::vector<const ElementSet*> circuits_;
  std::vector<char> alive_;
  std::size_t alive_count_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> incidence_;
};

// Largest T subset of the current set (at most 16 elements) whose removal
// loses at most |T| theta m sampled circuits; ties go to the lowest mask.
std::vector<std::size_t> largest_violating_subset(const HitTracker& tracker,
                                                  const ElementSet& current,
                                                  double budget_per_element) {
  const std::size_t k = current.size();
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<std::size_t> local(tracker.elements().size(), kAbsent);
  for (std::size_t j = 0; j < k; ++j) local[tracker.index(current[j])] = j;
  // within[U] = #alive circuits contained in U, by subset-sum transform.
  std::vector<std::size_t> within(full + 1, 0);
  tracker.for_each_alive([&](const ElementSet& c) {
    std::size_t mask = 0;
    for (ElementId e : c) mask |= std::size_t{1} << local[tracker.index(e)];
    ++within[mask];
  });
  for (std::size_t bit = 0; bit < k; ++bit) {
    for (std::size_t mask = 0; mask <= full; ++mask) {
      if (mask & (std::size_t{1} << bit)) {
        within[mask] += within[mask ^ (std::size_t{1} << bit)];
      }
    }
  }
  const std::size_t total = within[full];
  std::size_t best = 0;
  int best_size = 0;
  for (std::size_t t = 1; t <= full; ++t) {
    const int size = std::popcount(t);
    if (size <= best_size) continue;
    const double lost = static_cast<double>(total - within[full ^ t]);
    if (lost <= budget_per_element * size) {
      best = t;
      best_size = size;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < k; ++j) {
    if (best & (std::size_t{1} << j)) out.push_back(j);
  }
  return out;
}

}  // namespace

std::string to_string(PeelStrategy s) {
  return s == PeelStrategy::kExact ? "exact" : "greedy";
}

std::string to_string(ContractionMode m) {
  return m == ContractionMode::kFixedLength ? "fixed_length" : "longest_prefix";
}

std::string to_string(ProgressKind k) {
  switch (k) {
    case ProgressKind::kContracted:
      return "contracted";
    case ProgressKind::kDeleted:
      return "deleted";
    default:
      return "none";
  }
}

double log2n(std::size_t n) {
  return std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
}

double removal_threshold(double c, std::size_t set_size,
                         std::size_t ambient_n) {
  return c / (static_cast<double>(std::max<std::size_t>(set_size, 1)) *
              log2n(ambient_n));
}

std::size_t size_bucket(std::size_t set_size) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < set_size) ++b;
  return b;
}

MatroidView remove_small_circuits(Scheduler& sched, const MatroidView& view,
                                  std::size_t c0, ElementSet* deleted) {
  if (deleted != nullptr) deleted->clear();
  if (c0 == 0 || view.live_size() == 0) return view;
  const ElementSet& pool = view.live();
  QueryBatch batch;
  batch.add(Query::small_circuits(view, pool, c0));
  const auto answers = sched.submit_batch(batch);
  // Deleting the least element of every small circuit at once is sound:
  // by descending induction on ids, each deleted x = min C is spanned by
  // C \ {x}, whose members are larger and hence spanned by the survivors.
  std::vector<ElementId> drop;
  for (std::size_t size = 1; size <= c0; ++size) {
    const auto& flat = answers[0].circuits_by_size[size];
    for (std::size_t at = 0; at < flat.size(); at += size) {
      drop.push_back(flat[at]);
    }
  }
  ElementSet d = make_set(std::move(drop));
  if (deleted != nullptr) *deleted = d;
  if (d.empty()) return view;
  return view.with_deleted(d);
}

GloballyOptimalCertificate globally_optimal_constructor(
    Scheduler& sched, const MatroidView& view, const AlgorithmConfig& config,
    std::size_t ambient_n) {
  if (view.live_size() == 0) {
    throw DomainError("globally optimal set of an empty ground set");
  }
  const std::size_t n = ambient_n == 0 ? view.live_size() : ambient_n;
  const double log_n = log2n(n);
  GloballyOptimalCertificate cert;
  cert.strategy = config.strategy;
  ElementSet current = view.live();

  auto draw = [&](const ElementSet& over) {
    CircuitSample sample =
        sample_first_circuits(sched, view, over, config.samples);
    ++cert.sampling_phases;
    cert.sample_size = sample.size();
    if (sample.formed() == 0) {
      throw EmptyPeel("no sampled ordering formed a circuit", true);
    }
    return sample;
  };

  CircuitSample sample = draw(current);
  auto tracker = std::make_unique<HitTracker>(sample, view.universe());
  cert.epoch_q_hat =
      static_cast<double>(tracker->alive()) / static_cast<double>(tracker->samples());
  cert.epoch_size = current.size();
  bool removed_since_sample = false;

  while (!current.empty()) {
    const double m = static_cast<double>(tracker->samples());
    if (removed_since_sample && 4 * tracker->alive() < tracker->samples()) {
      sample = draw(current);
      tracker = std::make_unique<HitTracker>(sample, view.universe());
      cert.epoch_q_hat = static_cast<double>(tracker->alive()) /
                         static_cast<double>(tracker->samples());
      cert.epoch_size = current.size();
      removed_since_sample = false;
      continue;
    }
    const double theta =
        config.c_rem / (static_cast<double>(current.size()) * log_n);
    const double budget = m * theta;  // allowed circuit loss per element

    std::vector<std::size_t> remove;  // tracker indices
    for (ElementId e : current) {
      if (tracker->hits(tracker->index(e)) == 0) {
        remove.push_back(tracker->index(e));
      }
    }
    if (remove.empty()) {
      if (config.singleton_only) {
        std::size_t best = kAbsent;
        for (ElementId e : current) {
          const auto k = tracker->index(e);
          if (best == kAbsent || tracker->hits(k) < tracker->hits(best)) best = k;
        }
        if (static_cast<double>(tracker->hits(best)) <= budget) {
          remove.push_back(best);
        }
      } else if (config.strategy == PeelStrategy::kExact &&
                 current.size() <= config.exact_cap) {
        for (std::size_t j : largest_violating_subset(*tracker, current, budget)) {
          remove.push_back(tracker->index(current[j]));
        }
      } else {
        // Ascending hit counts; the loss of a prefix T is at most the sum of
        // its hits, so a prefix with sum <= |T| budget may be removed.
        std::vector<std::size_t> order;
        order.reserve(current.size());
        for (ElementId e : current) order.push_back(tracker->index(e));
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                           return tracker->hits(a) < tracker->hits(b);
                         });
        double sum = 0.0;
        std::size_t take = 0;
        for (std::size_t j = 0; j < order.size(); ++j) {
          sum += static_cast<double>(tracker->hits(order[j]));
          if (sum <= budget * static_cast<double>(j + 1)) take = j + 1;
        }
        remove.assign(order.begin(),
                      order.begin() + static_cast<std::ptrdiff_t>(take));
      }
    }
    if (remove.empty()) break;

    RemovalStep step;
    step.size_before = current.size();
    step.removed = remove.size();
    std::size_t lost = 0;
    for (std::size_t k : remove) lost += tracker->remove(k);
    step.mass_drop = static_cast<double>(lost) / m;
    cert.removals.push_back(step);
    removed_since_sample = true;
    ElementSet next;
    next.reserve(current.size() - remove.size());
    for (ElementId e : current) {
      if (tracker->in_s(tracker->index(e))) next.push_back(e);
    }
    current = std::move(next);
  }
  if (current.empty()) {
    throw EmptyPeel("every element was removed while peeling", false);
  }
  cert.set = std::move(current);
  cert.q_hat = static_cast<double>(tracker->alive()) /
               static_cast<double>(tracker->samples());
  cert.mass_floor = cert.epoch_q_hat -
                    config.c_rem *
                        (harmonic(cert.epoch_size) - harmonic(cert.set.size())) /
                        log_n;
  return cert;
}

std::optional<HittingViolation> verify_subset_hitting_exact(
    const MatroidView& view, const ElementSet& s, double theta_v) {
  if (s.empty()) return std::nullopt;
  if (s.size() > 8) {
    throw DomainError("exact subset-hitting check needs |S| <= 8");
  }
  view.require_live(s);
  const std::size_t k = s.size();
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<std::size_t> within(full + 1, 0);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  auto state = view.new_state();
  ElementSet circuit;
  std::size_t orderings = 0;
  std::size_t formed = 0;
  do {
    ++orderings;
    state->reset();
    for (std::size_t j : order) {
      if (state->can_add(s[j])) {
        state->add(s[j]);
        continue;
      }
      view.circuit_with(*state, s[j], circuit);
      std::size_t mask = 0;
      for (ElementId e : circuit) {
        mask |= std::size_t{1}
                << static_cast<std::size_t>(
                       std::lower_bound(s.begin(), s.end(), e) - s.begin());
      }
      ++within[mask];
      ++formed;
      break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  for (std::size_t bit = 0; bit < k; ++bit) {
    for (std::size_t mask = 0; mask <= full; ++mask) {
      if (mask & (std::size_t{1} << bit)) {
        within[mask] += within[mask ^ (std::size_t{1} << bit)];
      }
    }
  }
  std::optional<HittingViolation> worst;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= full; ++t) {
    const double p = static_cast<double>(formed - within[full ^ t]) /
                     static_cast<double>(orderings);
    const double size = std::popcount(t);
    if (p / size < worst_ratio) {
      worst_ratio = p / size;
      HittingViolation v;
      for (std::size_t j = 0; j < k; ++j) {
        if (t & (std::size_t{1} << j)) v.t.push_back(s[j]);
      }
      v.p = p;
      v.bound = size * theta_v;
      worst = std::move(v);
    }
  }
  if (worst && worst->p < worst->bound) return worst;
  return std::nullopt;
}

std::optional<HittingViolation> verify_subset_hitting_sampled(
    const MatroidView& view, const ElementSet& s, double theta_v,
    std::size_t samples, Rng& rng) {
  if (s.empty() || samples == 0) return std::nullopt;
  view.require_live(s);
  PermutationSource source(s);
  std::vector<ElementSet> circuits;
  std::vector<std::size_t> hits(s.size(), 0);
  auto position = [&](ElementId e) {
    return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), e) -
                                    s.begin());
  };
  for (std::size_t j = 0; j < samples; ++j) {
    const auto order = source.prefix(rng(), s.size());
    auto fc = first_circuit(view, order);
    if (!fc) continue;
    for (ElementId e : fc->circuit.members) ++hits[position(e)];
    circuits.push_back(std::move(fc->circuit.members));
  }
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return hits[a] < hits[b]; });
  std::vector<std::size_t> rank(s.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  // A circuit meets prefix k exactly when its least-ranked member is < k.
  std::vector<std::size_t> first_hit(s.size() + 1, 0);
  for (const auto& c : circuits) {
    std::size_t low = s.size();
    for (ElementId e : c) low = std::min(low, rank[position(e)]);
    ++first_hit[low];
  }
  std::optional<HittingViolation> worst;
  double worst_ratio = std::numeric_limits<double>::infinity();
  std::size_t covered = 0;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    covered += first_hit[k - 1];
    const double p =
        static_cast<double>(covered) / static_cast<double>(samples);
    if (p / static_cast<double>(k) < worst_ratio) {
      worst_ratio = p / static_cast<double>(k);
      HittingViolation v;
      for (std::size_t r = 0; r < k; ++r) v.t.push_back(s[order[r]]);
      std::sort(v.t.begin(), v.t.end());
      v.p = p;
      v.bound = static_cast<double>(k) * theta_v;
      worst = std::move(v);
    }
  }
  if (worst && worst->p < worst->bound) return worst;
  return std::nullopt;
}

PeelingResult repeated_global_peeling(Scheduler& sched,
                                      const MatroidView& view,
                                      const AlgorithmConfig& config) {
  PeelingResult result;
  MatroidView m =
      remove_small_circuits(sched, view, config.small_circuit_cutoff);
  result.n = m.live_size();
  const std::size_t n = result.n;
  std::size_t k = 0;
  while (m.live_size() > 0) {
    ++k;
    GloballyOptimalCertificate cert;
    try {
      cert = globally_optimal_constructor(sched, m, config, n);
    } catch (const EmptyPeel&) {
      result.empty_peel = true;
      return result;
    }
    PeelRecord rec;
    rec.index = k;
    rec.set = cert.set;
    rec.alpha = estimate_alpha(sched, m, cert.set, config.alpha_samples).value;
    rec.size_bucket = size_bucket(rec.set.size());
    rec.q_hat = cert.q_hat;
    m = m.with_deleted(rec.set);
    const double ratio = static_cast<double>(rec.alpha) /
                         static_cast<double>(rec.set.size());
    if (ratio >= 1.0 / log2n(n) || 2 * rec.set.size() > n) {
      result.stopping = std::move(rec);
      return result;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace parbasis
