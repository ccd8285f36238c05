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

// Experiment grids over instance families, sizes, algorithms and seeds.

#ifndef PARBASIS_BENCH_H_
#define PARBASIS_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parbasis/config.h"
#include "parbasis/generators.h"
#include "parbasis/io.h"
#include "parbasis/scheduler.h"

namespace parbasis {

struct ExperimentSpec {
  // Either a generator family with a size grid, or a single matroid source
  // (file path or "gen:" spec) in `matroid`.
  std::string family;
  std::vector<std::size_t> sizes;
  GeneratorParams params;
  std::uint64_t instance_seed = 0;
  std::string matroid;
  std::vector<std::string> algorithms;
  std::vector<std::uint64_t> seeds;
  AlgorithmConfig config;
  std::size_t budget_cap = kDefaultBudgetCap;
  // Output directory; empty means no files.
  std::string out_dir;
  bool trace = false;
};

// Validates every field; throws DomainError naming the offending one.
ExperimentSpec experiment_from_json(const Json& j);
void validate(const ExperimentSpec& spec);

inline constexpr const char* kRecordCsvHeader =
    "family,n,algo,seed,rounds,queries,basis_size,wall_ms,stop_contract,"
    "stop_delete,stop_exhaust";

struct ResultRecord {
  std::string family;
  std::size_t n = 0;
  std::string algo;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  std::size_t queries = 0;
  std::size_t basis_size = 0;
  double wall_ms = 0.0;
  std::size_t stop_contract = 0;
  std::size_t stop_delete = 0;
  std::size_t stop_exhaust = 0;
  bool valid = true;

  bool operator==(const ResultRecord&) const = default;
};

// A run that did not produce a basis (for example, a round over budget).
struct FailedRun {
  std::string family;
  std::size_t n = 0;
  std::string algo;
  std::uint64_t seed = 0;
  std::string reason;
};

struct ExperimentOutput {
  std::vector<ResultRecord> records;
  std::vector<FailedRun> failures;
};

// One record per (instance, algorithm, seed). Every returned record passed
// the basis check; a wrong basis throws std::logic_error. When out_dir is
// set, writes records.csv, records.jsonl, failures.jsonl and (with trace)
// one trace JSON per run.
ExperimentOutput run_experiment(const ExperimentSpec& spec);

std::string record_to_csv(const ResultRecord& r);
ResultRecord record_from_csv(const std::string& line);
Json record_to_json(const ResultRecord& r);
ResultRecord record_from_json(const Json& j);

std::string records_to_csv(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> records_from_csv(const std::string& text);

struct SummaryRow {
  std::string family;
  std::string algo;
  std::size_t n = 0;
  std::size_t runs = 0;
  double mean_rounds = 0.0;
  std::size_t min_rounds = 0;
  std::size_t max_rounds = 0;
  // Least-squares slope of log(mean rounds) against log n over the group;
  // absent with fewer than two sizes.
  std::optional<double> slope;

  bool operator==(const SummaryRow&) const = default;
};

// Rows sorted by (family, algo, n).
std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);
// {"family": {"algo": {"n": [...], "mean_rounds": [...], "slope": x}}}.
Json summary_plot_data(const std::vector<SummaryRow>& rows);

std::optional<double> loglog_slope(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

}  // namespace parbasis

#endif  // PARBASIS_BENCH_H_
