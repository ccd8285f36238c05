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

#include "parbasis/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "parbasis/algorithms.h"
#include "parbasis/view.h"

namespace parbasis {
namespace {

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> kAlgos = {"greedy", "kuw", "kps49",
                                                  "main37"};
  return kAlgos;
}

template <typename T>
T spec_field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DomainError(std::string("experiment field '") + key +
                      "' is missing or has the wrong type");
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string format_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

struct Instance {
  std::string family;
  MatroidPtr matroid;
};

std::vector<Instance> instances(const ExperimentSpec& spec) {
  std::vector<Instance> out;
  if (!spec.matroid.empty()) {
    std::string family = spec.matroid;
    if (family.rfind("gen:", 0) == 0) {
      family = parse_generator_spec(family).family;
    } else {
      family = std::filesystem::path(family).stem().string();
    }
    out.push_back({family, load_matroid(spec.matroid)});
    return out;
  }
  for (std::size_t n : spec.sizes) {
    GeneratorSpec g;
    g.family = spec.family;
    g.n = n;
    g.seed = spec.instance_seed;
    g.params = spec.params;
    out.push_back({spec.family, generate(g)});
  }
  return out;
}

}  // namespace

void validate(const ExperimentSpec& spec) {
  if (spec.matroid.empty()) {
    if (!is_known_family(spec.family)) {
      throw DomainError("unknown family '" + spec.family + "' in field 'family'");
    }
    if (spec.sizes.empty()) throw DomainError("field 'sizes' must be nonempty");
  }
  if (spec.algorithms.empty()) {
    throw DomainError("field 'algorithms' must name at least one algorithm");
  }
  for (const auto& a : spec.algorithms) {
    const auto& all = known_algorithms();
    if (std::find(all.begin(), all.end(), a) == all.end()) {
      throw DomainError("unknown algorithm '" + a + "' in field 'algorithms'");
    }
  }
  if (spec.seeds.empty()) throw DomainError("field 'seeds' must be nonempty");
}

ExperimentSpec experiment_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("experiment spec must be a JSON object");
  ExperimentSpec spec;
  for (const auto& [key, value] : j.items()) {
    if (key == "family") {
      spec.family = spec_field<std::string>(j, "family");
    } else if (key == "sizes") {
      spec.sizes = spec_field<std::vector<std::size_t>>(j, "sizes");
    } else if (key == "params") {
      if (!value.is_object()) throw DomainError("field 'params' must be an object");
      for (const auto& [k, v] : value.items()) {
        spec.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    } else if (key == "instance_seed") {
      spec.instance_seed = spec_field<std::uint64_t>(j, "instance_seed");
    } else if (key == "matroid") {
      spec.matroid = spec_field<std::string>(j, "matroid");
    } else if (key == "algorithms") {
      spec.algorithms = spec_field<std::vector<std::string>>(j, "algorithms");
    } else if (key == "seeds") {
      spec.seeds = spec_field<std::vector<std::uint64_t>>(j, "seeds");
    } else if (key == "config") {
      spec.config = config_from_json(value);
    } else if (key == "budget_cap") {
      spec.budget_cap = spec_field<std::size_t>(j, "budget_cap");
    } else if (key == "out") {
      spec.out_dir = spec_field<std::string>(j, "out");
    } else if (key == "trace") {
      spec.trace = spec_field<bool>(j, "trace");
    } else {
      throw DomainError("unknown experiment field '" + key + "'");
    }
  }
  validate(spec);
  return spec;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  ExperimentOutput out;
  const bool write = !spec.out_dir.empty();
  if (write) std::filesystem::create_directories(spec.out_dir);
  for (const Instance& inst : instances(spec)) {
    const MatroidView view(inst.matroid);
    const std::size_t n = view.live_size();
    for (const auto& algo : spec.algorithms) {
      for (std::uint64_t seed : spec.seeds) {
        const auto start = std::chrono::steady_clock::now();
        RunResult run;
        try {
          run = run_algorithm(algo, view, spec.config, seed, spec.budget_cap);
        } catch (const MatroidError& e) {
          out.failures.push_back({inst.family, n, algo, seed, e.what()});
          continue;
        }
        const auto stop = std::chrono::steady_clock::now();
        if (!is_basis(view, run.basis)) {
          throw std::logic_error(algo + " returned an invalid basis on " +
                                 inst.family + " n=" + std::to_string(n) +
                                 " seed=" + std::to_string(seed));
        }
        ResultRecord r;
        r.family = inst.family;
        r.n = n;
        r.algo = algo;
        r.seed = seed;
        r.rounds = run.ledger.rounds;
        r.queries = run.ledger.total_queries;
        r.basis_size = run.basis.size();
        r.wall_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        for (StopReason s : run.stop_reasons) {
          if (s == StopReason::kContractReturn) ++r.stop_contract;
          if (s == StopReason::kDeleteReturn) ++r.stop_delete;
          if (s == StopReason::kExhausted) ++r.stop_exhaust;
        }
        out.records.push_back(r);
        if (write && spec.trace) {
          const std::string name = inst.family + "_n" + std::to_string(n) +
                                   "_" + algo + "_s" + std::to_string(seed) +
                                   ".trace.json";
          write_file((std::filesystem::path(spec.out_dir) / name).string(),
                     run_result_to_json(run, true).dump(2) + "\n");
        }
      }
    }
  }
  if (write) {
    const std::filesystem::path dir(spec.out_dir);
    write_file((dir / "records.csv").string(), records_to_csv(out.records));
    std::string jsonl;
    for (const auto& r : out.records) jsonl += record_to_json(r).dump() + "\n";
    write_file((dir / "records.jsonl").string(), jsonl);
    std::string failures;
    for (const auto& f : out.failures) {
      Json j;
      j["family"] = f.family;
      j["n"] = f.n;
      j["algo"] = f.algo;
      j["seed"] = f.seed;
      j["reason"] = f.reason;
      failures += j.dump() + "\n";
    }
    write_file((dir / "failures.jsonl").string(), failures);
  }
  return out;
}

std::string record_to_csv(const ResultRecord& r) {
  return r.family + "," + std::to_string(r.n) + "," + r.algo + "," +
         std::to_string(r.seed) + "," + std::to_string(r.rounds) + "," +
         std::to_string(r.queries) + "," + std::to_string(r.basis_size) + "," +
         format_double(r.wall_ms, 3) + "," + std::to_string(r.stop_contract) +
         "," + std::to_string(r.stop_delete) + "," +
         std::to_string(r.stop_exhaust);
}

ResultRecord record_from_csv(const std::string& line) {
  const auto cells = split(line, ',');
  if (cells.size() != 11) {
    throw DomainError("record line has " + std::to_string(cells.size()) +
                      " columns, expected 11");
  }
  ResultRecord r;
  try {
    r.family = cells[0];
    r.n = std::stoull(cells[1]);
    r.algo = cells[2];
    r.seed = std::stoull(cells[3]);
    r.rounds = std::stoull(cells[4]);
    r.queries = std::stoull(cells[5]);
    r.basis_size = std::stoull(cells[6]);
    r.wall_ms = std::stod(cells[7]);
    r.stop_contract = std::stoull(cells[8]);
    r.stop_delete = std::stoull(cells[9]);
    r.stop_exhaust = std::stoull(cells[10]);
  } catch (const std::logic_error&) {
    throw DomainError("record line has a malformed number: '" + line + "'");
  }
  return r;
}

Json record_to_json(const ResultRecord& r) {
  Json j;
  j["family"] = r.family;
  j["n"] = r.n;
  j["algo"] = r.algo;
  j["seed"] = r.seed;
  j["rounds"] = r.rounds;
  j["queries"] = r.queries;
  j["basis_size"] = r.basis_size;
  j["wall_ms"] = r.wall_ms;
  j["stop_contract"] = r.stop_contract;
  j["stop_delete"] = r.stop_delete;
  j["stop_exhaust"] = r.stop_exhaust;
  j["valid"] = r.valid;
  return j;
}

ResultRecord record_from_json(const Json& j) {
  ResultRecord r;
  r.family = spec_field<std::string>(j, "family");
  r.n = spec_field<std::size_t>(j, "n");
  r.algo = spec_field<std::string>(j, "algo");
  r.seed = spec_field<std::uint64_t>(j, "seed");
  r.rounds = spec_field<std::size_t>(j, "rounds");
  r.queries = spec_field<std::size_t>(j, "queries");
  r.basis_size = spec_field<std::size_t>(j, "basis_size");
  r.wall_ms = spec_field<double>(j, "wall_ms");
  r.stop_contract = spec_field<std::size_t>(j, "stop_contract");
  r.stop_delete = spec_field<std::size_t>(j, "stop_delete");
  r.stop_exhaust = spec_field<std::size_t>(j, "stop_exhaust");
  r.valid = spec_field<bool>(j, "valid");
  return r;
}

std::string records_to_csv(const std::vector<ResultRecord>& records) {
  std::string out = std::string(kRecordCsvHeader) + "\n";
  for (const auto& r : records) out += record_to_csv(r) + "\n";
  return out;
}

std::vector<ResultRecord> records_from_csv(const std::string& text) {
  std::vector<ResultRecord> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line == kRecordCsvHeader) continue;
    }
    out.push_back(record_from_csv(line));
  }
  return out;
}

std::optional<double> loglog_slope(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records) {
  std::map<std::tuple<std::string, std::string, std::size_t>,
           std::vector<std::size_t>>
      cells;
  for (const auto& r : records) cells[{r.family, r.algo, r.n}].push_back(r.rounds);
  std::vector<SummaryRow> rows;
  for (const auto& [key, rounds] : cells) {
    SummaryRow row;
    std::tie(row.family, row.algo, row.n) = key;
    row.runs = rounds.size();
    double sum = 0;
    for (auto x : rounds) sum += static_cast<double>(x);
    row.mean_rounds = sum / static_cast<double>(rounds.size());
    row.min_rounds = *std::min_element(rounds.begin(), rounds.end());
    row.max_rounds = *std::max_element(rounds.begin(), rounds.end());
    rows.push_back(row);
  }
  // Slopes per (family, algo) group; rows are already grouped and sorted.
  for (std::size_t lo = 0; lo < rows.size();) {
    std::size_t hi = lo;
    std::vector<double> xs, ys;
    while (hi < rows.size() && rows[hi].family == rows[lo].family &&
           rows[hi].algo == rows[lo].algo) {
      if (rows[hi].n > 0 && rows[hi].mean_rounds > 0) {
        xs.push_back(static_cast<double>(rows[hi].n));
        ys.push_back(rows[hi].mean_rounds);
      }
      ++hi;
    }
    const auto slope = loglog_slope(xs, ys);
    for (std::size_t k = lo; k < hi; ++k) rows[k].slope = slope;
    lo = hi;
  }
  return rows;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "family,algo,n,runs,mean_rounds,min_rounds,max_rounds,slope\n";
  for (const auto& r : rows) {
    out += r.family + "," + r.algo + "," + std::to_string(r.n) + "," +
           std::to_string(r.runs) + "," + format_double(r.mean_rounds, 3) +
           "," + std::to_string(r.min_rounds) + "," +
           std::to_string(r.max_rounds) + "," +
           (r.slope ? format_double(*r.slope, 4) : std::string()) + "\n";
  }
  return out;
}

Json summary_plot_data(const std::vector<SummaryRow>& rows) {
  Json j = Json::object();
  for (const auto& r : rows) {
    Json& g = j[r.family][r.algo];
    g["n"].push_back(r.n);
    g["mean_rounds"].push_back(r.mean_rounds);
    g["slope"] = r.slope ? Json(*r.slope) : Json(nullptr);
  }
  return j;
}

}  // namespace parbasis
