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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "parbasis/bench.h"
#include "parbasis/io.h"

namespace parbasis {
namespace {

ExperimentSpec grid(const std::string& family, std::vector<std::size_t> sizes,
                    std::vector<std::string> algos, std::vector<std::uint64_t> seeds) {
  ExperimentSpec spec;
  spec.family = family;
  spec.sizes = std::move(sizes);
  spec.algorithms = std::move(algos);
  spec.seeds = std::move(seeds);
  spec.instance_seed = 1;
  return spec;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("parbasis_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST_CASE("one record per size, algorithm and seed") {
  auto spec = grid("uniform", {256, 1024}, {"kuw", "main37"}, {1, 2, 3});
  const auto dir = scratch_dir("grid");
  spec.out_dir = dir.string();
  spec.trace = true;
  const auto out = run_experiment(spec);
  CHECK(out.records.size() == 12);
  CHECK(out.failures.empty());
  for (const auto& r : out.records) {
    CHECK(r.valid);
    CHECK(r.family == "uniform");
    CHECK(r.basis_size == r.n / 2);
    CHECK(r.rounds > 0);
    CHECK(r.queries >= r.rounds);
  }
  CHECK(std::filesystem::exists(dir / "records.csv"));
  CHECK(std::filesystem::exists(dir / "records.jsonl"));
  CHECK(std::filesystem::exists(dir / "failures.jsonl"));
  std::size_t traces = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    traces += entry.path().string().find(".trace.json") != std::string::npos;
  }
  CHECK(traces == 12);
  const auto csv = records_from_csv(read_file((dir / "records.csv").string()));
  CHECK(csv.size() == 12);
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid specs name the offending field") {
  CHECK_THROWS_WITH_AS(
      validate(experiment_from_json(Json::parse(
          R"({"family":"nosuch","sizes":[16],"algorithms":["kuw"],"seeds":[1]})"))),
      doctest::Contains("family"), DomainError);
  CHECK_THROWS_WITH_AS(experiment_from_json(Json::parse(R"({"famly":"uniform"})")),
                       doctest::Contains("famly"), DomainError);
  CHECK_THROWS_WITH_AS(
      experiment_from_json(Json::parse(R"({"family":"uniform","sizes":"big"})")),
      doctest::Contains("sizes"), DomainError);
  CHECK_THROWS_WITH_AS(
      validate(grid("uniform", {}, {"kuw"}, {1})), doctest::Contains("sizes"), DomainError);
  CHECK_THROWS_WITH_AS(
      validate(grid("uniform", {16}, {}, {1})), doctest::Contains("algorithms"), DomainError);
  CHECK_THROWS_WITH_AS(validate(grid("uniform", {16}, {"fast"}, {1})),
                       doctest::Contains("algorithms"), DomainError);
  CHECK_THROWS_AS(
      experiment_from_json(Json::parse(
          R"({"family":"uniform","sizes":[16],"algorithms":["kuw"],"seeds":[1],"config":{"samplez":3}})")),
      DomainError);
}

TEST_CASE("spec JSON fills every field") {
  const auto spec = experiment_from_json(Json::parse(R"({
    "family": "partition", "sizes": [64, 256], "params": {"cap": 1},
    "instance_seed": 4, "algorithms": ["kuw"], "seeds": [7, 8],
    "config": {"samples": 5000}, "budget_cap": 123456, "out": "x", "trace": true})"));
  CHECK(spec.family == "partition");
  CHECK(spec.sizes == std::vector<std::size_t>{64, 256});
  CHECK(spec.params.at("cap") == "1");
  CHECK(spec.instance_seed == 4);
  CHECK(spec.seeds == std::vector<std::uint64_t>{7, 8});
  CHECK(spec.config.samples == 5000);
  CHECK(spec.budget_cap == 123456);
  CHECK(spec.out_dir == "x");
  CHECK(spec.trace);
}

TEST_CASE("budget overruns are recorded as failed runs") {
  auto spec = grid("graphic_random", {256}, {"main37", "kuw"}, {1});
  spec.budget_cap = 300;
  const auto out = run_experiment(spec);
  REQUIRE(out.failures.size() == 1);
  CHECK(out.failures[0].algo == "main37");
  CHECK(out.failures[0].reason.find("budget") != std::string::npos);
  CHECK(out.records.size() == 1);
  CHECK(out.records[0].algo == "kuw");
}

TEST_CASE("a single matroid source runs once per algorithm and seed") {
  ExperimentSpec spec;
  spec.matroid = "gen:partition:n=64,seed=2";
  spec.algorithms = {"greedy", "kps49"};
  spec.seeds = {1, 2};
  const auto out = run_experiment(spec);
  CHECK(out.records.size() == 4);
  for (const auto& r : out.records) CHECK(r.n == 64);
}

TEST_CASE("records round-trip through CSV and JSON") {
  const auto out = run_experiment(grid("partition", {16, 64}, {"kuw", "kps49"}, {1, 2}));
  const std::string csv = records_to_csv(out.records);
  CHECK(csv.rfind(std::string(kRecordCsvHeader) + "\n", 0) == 0);
  const auto back = records_from_csv(csv);
  REQUIRE(back.size() == out.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    auto expect = out.records[i];
    expect.valid = true;
    expect.wall_ms = std::round(expect.wall_ms * 1000) / 1000;
    CHECK(back[i].wall_ms == doctest::Approx(expect.wall_ms).epsilon(1e-9));
    auto same = back[i];
    same.wall_ms = expect.wall_ms;
    CHECK(same == expect);
    CHECK(record_from_json(Json::parse(record_to_json(out.records[i]).dump())) ==
          out.records[i]);
  }
  CHECK(summarize(back) == summarize(out.records));
  CHECK(summary_to_csv(summarize(back)) == summary_to_csv(summarize(out.records)));
  CHECK(records_to_csv(back) == csv);
}

TEST_CASE("summaries fit log-log slopes") {
  std::vector<ResultRecord> records;
  for (std::size_t n : {16u, 64u, 256u, 1024u}) {
    for (std::uint64_t seed : {1u, 2u}) {
      ResultRecord r;
      r.family = "uniform";
      r.algo = "kuw";
      r.n = n;
      r.seed = seed;
      r.rounds = static_cast<std::size_t>(std::sqrt(static_cast<double>(n))) + seed - 1;
      records.push_back(r);
    }
  }
  ResultRecord single;
  single.family = "rank1";
  single.algo = "main37";
  single.n = 4096;
  single.rounds = 2;
  records.push_back(single);
  const auto rows = summarize(records);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    if (row.family == "uniform") {
      REQUIRE(row.slope);
      CHECK(*row.slope == doctest::Approx(0.5).epsilon(0.05));
      CHECK(row.runs == 2);
      CHECK(row.max_rounds == row.min_rounds + 1);
    } else {
      CHECK_FALSE(row.slope);
    }
  }
  CHECK(summarize({}).empty());
  CHECK(summary_to_csv({}).find('\n') == summary_to_csv({}).size() - 1);
  CHECK_FALSE(loglog_slope({4.0}, {2.0}));
  CHECK(*loglog_slope({1.0, 10.0, 100.0}, {3.0, 30.0, 300.0}) == doctest::Approx(1.0));
  const auto plot = summary_plot_data(rows);
  REQUIRE(plot.contains("uniform"));
  CHECK(plot["uniform"]["kuw"]["n"] == Json({16, 64, 256, 1024}));
  CHECK(plot["uniform"]["kuw"]["mean_rounds"].size() == 4);
  CHECK(plot["uniform"]["kuw"]["slope"].is_number());
  CHECK(plot["rank1"]["main37"]["slope"].is_null());
}

TEST_CASE("measured KUW slope on a uniform grid") {
  const auto out = run_experiment(grid("uniform", {64, 256, 1024}, {"kuw"}, {1, 2}));
  const auto rows = summarize(out.records);
  REQUIRE_FALSE(rows.empty());
  REQUIRE(rows[0].slope);
  CHECK(*rows[0].slope >= 0.35);
  CHECK(*rows[0].slope <= 0.65);
}

TEST_CASE("rank-one grid: the main driver beats KUW in every record") {
  const auto out = run_experiment(grid("rank1", {4096}, {"kuw", "main37"}, {1, 2}));
  std::size_t kuw_min = static_cast<std::size_t>(-1), main_max = 0;
  for (const auto& r : out.records) {
    if (r.algo == "kuw") kuw_min = std::min(kuw_min, r.rounds);
    if (r.algo == "main37") main_max = std::max(main_max, r.rounds);
  }
  CHECK(main_max < kuw_min);
}

}  // namespace
}  // namespace parbasis
