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

#include "parbasis/algorithms.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace parbasis {
namespace {

std::size_t default_kuw_threshold(std::size_t n, const AlgorithmConfig& config) {
  if (config.kuw_threshold > 0) return config.kuw_threshold;
  return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

double ratio(std::size_t alpha, std::size_t set_size) {
  return static_cast<double>(alpha) / static_cast<double>(set_size);
}

RunResult finish(std::string name, const MatroidView& start,
                 const MatroidView& end, const Scheduler& sched,
                 RunResult result) {
  result.algorithm = std::move(name);
  result.basis = set_difference(end.contracted(), start.contracted());
  result.ledger = sched.ledger();
  return result;
}

// Applies `deleted` to `view`, rank-checking it when `check` is set.
MatroidView apply_deletions(bool check, const MatroidView& view,
                            const ElementSet& deleted, RunResult& result) {
  ++result.deletion_checks;
  if (check && !deletion_is_sound(view, deleted)) {
    ++result.unsound_deletions;
  }
  return view.with_deleted(deleted);
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kContractReturn:
      return "contract";
    case StopReason::kDeleteReturn:
      return "delete";
    default:
      return "exhausted";
  }
}

bool is_basis(const MatroidView& view, const ElementSet& basis) {
  if (!is_sorted_set(basis)) return false;
  for (ElementId e : basis) {
    if (!view.is_live(e)) return false;
  }
  auto state = view.new_state();
  for (ElementId e : basis) {
    if (!state->can_add(e)) return false;
    state->add(e);
  }
  const Membership in_basis(view.universe(), basis);
  for (ElementId x : view.live()) {
    if (!in_basis.contains(x) && state->can_add(x)) return false;
  }
  return true;
}

ElementSet greedy_basis(Scheduler& sched, const MatroidView& view) {
  std::vector<ElementId> kept;
  for (ElementId x : view.live()) {
    std::vector<ElementId> trial = kept;
    trial.push_back(x);
    QueryBatch batch;
    batch.add(Query::subset(view, std::move(trial)));
    if (sched.submit_batch(batch)[0].independent) kept.push_back(x);
  }
  return make_set(std::move(kept));
}

RunResult greedy_basis_run(const MatroidView& view, std::uint64_t seed,
                           std::size_t budget_cap) {
  Scheduler sched(seed, budget_cap);
  RunResult result;
  result.algorithm = "greedy";
  result.basis = greedy_basis(sched, view);
  result.ledger = sched.ledger();
  return result;
}

std::size_t greedy_rank(Scheduler& sched, const MatroidView& view,
                        const ElementSet& s) {
  view.require_live(s);
  std::vector<ElementId> kept;
  for (ElementId x : s) {
    std::vector<ElementId> trial = kept;
    trial.push_back(x);
    QueryBatch batch;
    batch.add(Query::subset(view, std::move(trial)));
    if (sched.submit_batch(batch)[0].independent) kept.push_back(x);
  }
  return kept.size();
}

MatroidView kuw_reduce(Scheduler& sched, const MatroidView& view) {
  MatroidView v = view;
  while (v.live_size() > 0) {
    const ElementSet& live = v.live();
    const std::size_t n = live.size();
    const std::size_t groups = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(n))));
    const std::size_t width = (n + groups - 1) / groups;
    QueryBatch batch;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (std::size_t lo = 0; lo < n; lo += width) {
      const std::size_t hi = std::min(n, lo + width);
      ranges.emplace_back(lo, hi);
      batch.add(Query::prefixes(
          v, std::vector<ElementId>(live.begin() + static_cast<std::ptrdiff_t>(lo),
                                    live.begin() + static_cast<std::ptrdiff_t>(hi))));
    }
    const auto answers = sched.submit_batch(batch);
    std::optional<std::size_t> best;
    for (std::size_t g = 0; g < ranges.size(); ++g) {
      const std::size_t len = ranges[g].second - ranges[g].first;
      if (answers[g].prefix == len &&
          (!best || len > ranges[*best].second - ranges[*best].first)) {
        best = g;
      }
    }
    if (best) {
      v = v.with_contracted(batch.queries()[*best].elements);
      continue;
    }
    std::vector<ElementId> doomed;
    for (std::size_t g = 0; g < ranges.size(); ++g) {
      doomed.push_back(batch.queries()[g].elements[answers[g].prefix]);
    }
    v = v.with_deleted(make_set(std::move(doomed)));
  }
  return v;
}

RunResult kuw_basis(const MatroidView& view, std::uint64_t seed,
                    std::size_t budget_cap) {
  Scheduler sched(seed, budget_cap);
  const MatroidView end = kuw_reduce(sched, view);
  return finish("kuw", view, end, sched, RunResult{});
}

double progress_target(std::size_t n, const AlgorithmConfig& config) {
  const double nd = static_cast<double>(std::max<std::size_t>(n, 1));
  const double f = std::pow(nd, config.f_exponent) /
                   std::pow(log2n(n), config.f_log_power);
  return std::max(config.f_min, f);
}

DecompositionOutcome guaranteed_progress_decomposition(
    Scheduler& sched, const MatroidView& view, const AlgorithmConfig& config,
    std::optional<double> f_override) {
  DecompositionOutcome out;
  out.n = view.live_size();
  out.f = f_override ? *f_override : progress_target(out.n, config);
  const double n = static_cast<double>(out.n);
  double total = 0.0;
  MatroidView working = view;
  std::size_t i = 0;
  while (working.live_size() > 0 && 2 * working.live_size() >= out.n) {
    ++i;
    GloballyOptimalCertificate cert;
    try {
      cert = globally_optimal_constructor(sched, working, config, out.n);
    } catch (const EmptyPeel& e) {
      if (i == 1) throw;
      out.empty_peel = true;
      if (e.no_circuits()) out.independent_remainder = working.live();
      out.reason = StopReason::kExhausted;
      return out;
    }
    SetProfile profile = profile_set(sched, working, cert.set, config);
    PeelRecord rec;
    rec.index = i;
    rec.set = cert.set;
    rec.alpha = profile.alpha.value;
    rec.size_bucket = size_bucket(rec.set.size());
    rec.good = profile.good();
    rec.q_hat = cert.q_hat;
    rec.target = static_cast<double>(i) * out.f;
    rec.contract_lhs = ratio(rec.alpha, rec.set.size()) * n;
    rec.delete_lhs = total;
    if (rec.contract_lhs >= rec.target) {
      out.records.push_back(std::move(rec));
      out.reason = StopReason::kContractReturn;
      return out;
    }
    const double size = static_cast<double>(rec.set.size());
    total += *rec.good ? size
                       : size * std::sqrt(size) /
                             static_cast<double>(std::max<std::size_t>(rec.alpha, 1));
    rec.delete_lhs = total;
    working = working.with_deleted(rec.set);
    const bool stop = rec.delete_lhs >= rec.target;
    out.records.push_back(std::move(rec));
    out.profiles.push_back(std::move(profile));
    if (stop) {
      out.reason = StopReason::kDeleteReturn;
      return out;
    }
  }
  out.reason = StopReason::kExhausted;
  return out;
}

RunResult find_basis_37(const MatroidView& view, const AlgorithmConfig& config,
                        std::uint64_t seed, std::size_t budget_cap) {
  Scheduler sched(seed, budget_cap);
  sched.set_verify(config.verify);
  const bool check = config.verify || config.check_deletions;
  RunResult result;
  const std::size_t threshold = default_kuw_threshold(view.live_size(), config);
  MatroidView v = view;
  try {
    while (v.live_size() > threshold) {
      const std::size_t before = v.live_size();
      v = remove_small_circuits(sched, v, config.small_circuit_cutoff);
      const std::size_t n = v.live_size();
      if (n == 0) break;
      std::optional<DecompositionOutcome> out;
      try {
        out = guaranteed_progress_decomposition(sched, v, config);
      } catch (const EmptyPeel& e) {
        if (!e.no_circuits()) throw;
        // No sampled ordering of the whole live set closed a circuit, so the
        // live set is independent.
        v = v.with_contracted(v.live());
        continue;
      }
      result.stop_reasons.push_back(out->reason);
      const std::size_t first = result.peel_trace.size();
      for (auto& rec : out->records) result.peel_trace.push_back(rec);

      MatroidView next = v;
      if (out->reason == StopReason::kContractReturn) {
        PeelRecord& trigger = result.peel_trace.back();
        AlphaEstimate alpha{trigger.alpha, trigger.set.size()};
        const ElementSet chosen = contract_with_retry(
            sched, v, contraction_length(n, trigger.set.size(), alpha), config);
        trigger.progress_kind = ProgressKind::kContracted;
        trigger.progress_count = chosen.size();
        next = v.with_contracted(chosen);
      } else if (!out->profiles.empty()) {
        std::vector<const SetProfile*> profiles;
        for (const auto& p : out->profiles) profiles.push_back(&p);
        const auto results =
            balanced_delete_batch(sched, v, profiles, n, config);
        sched.note_unbatched(profiles.size() - 1);
        std::vector<ElementId> doomed;
        for (std::size_t k = 0; k < results.size(); ++k) {
          PeelRecord& rec = result.peel_trace[first + k];
          rec.progress_kind = ProgressKind::kDeleted;
          rec.progress_count = results[k].deleted.size();
          doomed.insert(doomed.end(), results[k].deleted.begin(),
                        results[k].deleted.end());
        }
        ElementSet deleted = make_set(std::move(doomed));
        ElementSet contracted;
        if (out->independent_remainder) contracted = *out->independent_remainder;
        if (!contracted.empty()) next = next.with_contracted(contracted);
        if (!deleted.empty()) next = apply_deletions(check, next, deleted, result);
      } else if (out->independent_remainder) {
        next = v.with_contracted(*out->independent_remainder);
      }
      v = std::move(next);
      if (v.live_size() == before) break;
    }
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const MatroidError& e) {
    // Correctness never depends on the decomposition: finish with the
    // baseline from the current view.
    ++result.fallbacks;
    result.fallback_reason = e.what();
  }
  if (v.live_size() > 0) {
    if (v.live_size() > threshold && result.fallbacks == 0) {
      ++result.fallbacks;
      result.fallback_reason = "no progress";
    }
    v = kuw_reduce(sched, v);
  }
  return finish("main37", view, v, sched, std::move(result));
}

Decomposition49Outcome decompose_49(Scheduler& sched, const MatroidView& view,
                                    const AlgorithmConfig& config) {
  Decomposition49Outcome out(remove_small_circuits(
      sched, view, config.small_circuit_cutoff));
  out.small_circuit_deletions =
      set_difference(out.preprocessed.deleted(), view.deleted());
  out.n = out.preprocessed.live_size();
  out.t = std::max(1.0, std::pow(static_cast<double>(std::max<std::size_t>(out.n, 1)),
                                 config.t_exponent));
  AlgorithmConfig singleton = config;
  singleton.singleton_only = true;
  double total = 0.0;
  MatroidView working = out.preprocessed;
  std::size_t i = 0;
  while (working.live_size() > 0 && 2 * working.live_size() >= out.n) {
    ++i;
    GloballyOptimalCertificate cert;
    try {
      cert = globally_optimal_constructor(sched, working, singleton, out.n);
    } catch (const EmptyPeel&) {
      out.empty_peel = true;
      out.reason = StopReason::kExhausted;
      return out;
    }
    const AlphaEstimate alpha =
        estimate_alpha(sched, working, cert.set, config.alpha_samples);
    PeelRecord rec;
    rec.index = i;
    rec.set = cert.set;
    rec.alpha = alpha.value;
    rec.size_bucket = size_bucket(rec.set.size());
    rec.q_hat = cert.q_hat;
    rec.target = static_cast<double>(i) * out.t;
    rec.contract_lhs = static_cast<double>(alpha.value);
    const double size = static_cast<double>(rec.set.size());
    if (static_cast<double>(alpha.value) > std::sqrt(size)) {
      rec.delete_lhs = total;
      out.records.push_back(std::move(rec));
      out.alphas.push_back(alpha);
      out.reason = StopReason::kContractReturn;
      return out;
    }
    total += size;
    rec.delete_lhs = total;
    working = working.with_deleted(rec.set);
    const bool stop = total >= rec.target;
    out.records.push_back(std::move(rec));
    out.alphas.push_back(alpha);
    if (stop) {
      out.reason = StopReason::kDeleteReturn;
      return out;
    }
  }
  out.reason = StopReason::kExhausted;
  return out;
}

RunResult new_decomposition_49(const MatroidView& view,
                               const AlgorithmConfig& config,
                               std::uint64_t seed, std::size_t budget_cap) {
  Scheduler sched(seed, budget_cap);
  sched.set_verify(config.verify);
  const bool check = config.verify || config.check_deletions;
  RunResult result;
  const std::size_t threshold = default_kuw_threshold(view.live_size(), config);
  MatroidView v = view;
  try {
    while (v.live_size() > threshold) {
      const std::size_t before = v.live_size();
      Decomposition49Outcome out = decompose_49(sched, v, config);
      v = out.preprocessed;
      if (out.n == 0) break;
      if (out.empty_peel && out.records.empty()) break;
      result.stop_reasons.push_back(out.reason);
      const std::size_t first = result.peel_trace.size();
      for (auto& rec : out.records) result.peel_trace.push_back(rec);
      if (out.reason == StopReason::kContractReturn) {
        PeelRecord& trigger = result.peel_trace.back();
        const ElementSet chosen = contract_with_retry(
            sched, v,
            contraction_length(out.n, trigger.set.size(), out.alphas.back()),
            config);
        trigger.progress_kind = ProgressKind::kContracted;
        trigger.progress_count = chosen.size();
        v = v.with_contracted(chosen);
      } else {
        std::vector<RecoveryRequest> requests;
        for (std::size_t k = 0; k < out.records.size(); ++k) {
          requests.push_back(
              RecoveryRequest{&v, out.records[k].set, out.alphas[k]});
        }
        const auto results = recover_redundant_batch(sched, requests, out.n, config);
        sched.note_unbatched(requests.size() - 1);
        std::vector<ElementId> doomed;
        for (std::size_t k = 0; k < results.size(); ++k) {
          if (!results[k]) continue;
          PeelRecord& rec = result.peel_trace[first + k];
          rec.progress_kind = ProgressKind::kDeleted;
          rec.progress_count = results[k]->deleted.size();
          doomed.insert(doomed.end(), results[k]->deleted.begin(),
                        results[k]->deleted.end());
        }
        ElementSet deleted = make_set(std::move(doomed));
        if (!deleted.empty()) v = apply_deletions(check, v, deleted, result);
      }
      if (v.live_size() == before) break;
    }
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const MatroidError& e) {
    ++result.fallbacks;
    result.fallback_reason = e.what();
  }
  if (v.live_size() > 0) {
    if (v.live_size() > threshold && result.fallbacks == 0) {
      ++result.fallbacks;
      result.fallback_reason = "no progress";
    }
    v = kuw_reduce(sched, v);
  }
  return finish("kps49", view, v, sched, std::move(result));
}

RunResult run_algorithm(const std::string& name, const MatroidView& view,
                        const AlgorithmConfig& config, std::uint64_t seed,
                        std::size_t budget_cap) {
  if (name == "greedy") return greedy_basis_run(view, seed, budget_cap);
  if (name == "kuw") return kuw_basis(view, seed, budget_cap);
  if (name == "kps49") return new_decomposition_49(view, config, seed, budget_cap);
  if (name == "main37") return find_basis_37(view, config, seed, budget_cap);
  throw DomainError("unknown algorithm: " + name);
}

}  // namespace parbasis
