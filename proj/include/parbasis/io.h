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

// JSON forms of matroids, configs, ledgers and run results.
//
// Matroid files:
//   {"family": "uniform", "n": 10, "rank": 4}
//   {"family": "partition", "blocks": [0, 0, 1], "capacities": [1, 1]}
//   {"family": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}
//   {"family": "linear", "rows": 2, "cols": 3, "modulus": 2,
//    "matrix": [1, 0, 1, 0, 1, 1]}                      (row-major)
//   {"family": "direct_sum", "parts": [ ... ]}

#ifndef PARBASIS_IO_H_
#define PARBASIS_IO_H_

#include <string>

#include "json.hpp"
#include "parbasis/algorithms.h"
#include "parbasis/config.h"
#include "parbasis/matroid.h"
#include "parbasis/scheduler.h"

namespace parbasis {

using Json = nlohmann::ordered_json;

MatroidPtr matroid_from_json(const Json& j);
Json matroid_to_json(const Matroid& m);

// A path to a matroid file or a "gen:" generator spec.
MatroidPtr load_matroid(const std::string& source);

// Unknown keys throw DomainError naming the key.
AlgorithmConfig config_from_json(const Json& j, AlgorithmConfig base = {});
Json config_to_json(const AlgorithmConfig& config);

Json ledger_to_json(const RoundLedger& ledger);
Json peel_record_to_json(const PeelRecord& rec);
// `with_trace` adds the per-peel records.
Json run_result_to_json(const RunResult& result, bool with_trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace parbasis

#endif  // PARBASIS_IO_H_
