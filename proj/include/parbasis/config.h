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

#ifndef PARBASIS_CONFIG_H_
#define PARBASIS_CONFIG_H_

#include <cstddef>
#include <string>

namespace parbasis {

enum class PeelStrategy { kGreedy, kExact };
enum class ContractionMode {
  // Longest independent prefix over all sampled orderings, if at least l.
  kLongestPrefix,
  // First sampled ordering whose length-l prefix is independent.
  kFixedLength,
};

std::string to_string(PeelStrategy s);
std::string to_string(ContractionMode m);

// Every tunable constant of the decomposition algorithms. Asymptotic
// constants are replaced by values that keep each branch reachable at
// n <= ~10^4.
struct AlgorithmConfig {
  // Orderings per first-circuit sample (capped so a round fits the budget).
  std::size_t samples = 100'000;
  // Orderings for alpha estimation.
  std::size_t alpha_samples = 4096;
  // Circuit-size statistic grouping.
  std::size_t group_size = 32;
  std::size_t groups = 32;

  // Removal threshold theta(S) = c_rem / (|S| log2 n).
  double c_rem = 0.125;
  // Slack of the circuit-mass floor 1 - eps_q.
  double eps_q = 0.125;
  PeelStrategy strategy = PeelStrategy::kGreedy;
  // Largest |S| for which the exact strategy enumerates all subsets.
  std::size_t exact_cap = 16;
  // Only single elements are removal candidates.
  bool singleton_only = false;
  // Circuits of size <= c0 are removed before peeling; 0 disables.
  std::size_t small_circuit_cutoff = 2;

  // Orderings drawn when contracting an independent set.
  std::size_t contraction_trials = 256;
  ContractionMode contraction_mode = ContractionMode::kLongestPrefix;
  // Redundant-element recovery uses orderings of t = c_t * log2(n) * alpha.
  double recovery_factor = 0.1;
  // Short-circuit witness cutoff c_w * log2(n) * max(l, 1).
  double witness_factor = 4.0;

  // Average progress target f = max(f_min, n^f_exponent / log2(n)^f_log_power).
  double f_exponent = 4.0 / 7.0;
  double f_log_power = 0.0;
  double f_min = 1.0;
  // Comparator target t = max(1, n^t_exponent).
  double t_exponent = 5.0 / 9.0;
  // Hand the remainder to the square-root baseline once at most this many
  // elements are live; 0 means ceil(sqrt(n)) of the original ground set.
  std::size_t kuw_threshold = 0;

  // Oracle-checked assertions on every intermediate object (uncharged).
  bool verify = false;
  // Rank-check every executed deletion batch (uncharged); implied by verify.
  bool check_deletions = false;
};

}  // namespace parbasis

#endif  // PARBASIS_CONFIG_H_
