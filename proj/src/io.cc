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

#include "parbasis/io.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parbasis/generators.h"
#include "parbasis/types.h"

namespace parbasis {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("matroid spec is missing field '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DomainError(std::string("matroid field '") + key + "' has the wrong type");
  }
}

}  // namespace

MatroidPtr matroid_from_json(const Json& j) {
  const auto family = get<std::string>(j, "family");
  if (family == "uniform") {
    const auto n = get<std::size_t>(j, "n");
    const auto rank = get<std::size_t>(j, "rank");
    if (rank > n) throw DomainError("uniform field 'rank' exceeds 'n'");
    return std::make_shared<UniformMatroid>(n, rank);
  }
  if (family == "partition") {
    return std::make_shared<PartitionMatroid>(
        get<std::vector<std::uint32_t>>(j, "blocks"),
        get<std::vector<std::uint32_t>>(j, "capacities"));
  }
  if (family == "graphic") {
    std::vector<GraphicMatroid::Edge> edges;
    for (const auto& e : field(j, "edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw DomainError("matroid field 'edges' must hold [u, v] pairs");
      }
      edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
    }
    return std::make_shared<GraphicMatroid>(get<std::size_t>(j, "vertices"),
                                            std::move(edges));
  }
  if (family == "linear") {
    return std::make_shared<LinearMatroid>(
        get<std::size_t>(j, "rows"), get<std::size_t>(j, "cols"),
        get<std::uint32_t>(j, "modulus"),
        get<std::vector<std::int64_t>>(j, "matrix"));
  }
  if (family == "direct_sum") {
    std::vector<MatroidPtr> parts;
    for (const auto& p : field(j, "parts")) parts.push_back(matroid_from_json(p));
    return std::make_shared<DirectSumMatroid>(std::move(parts));
  }
  throw DomainError("unknown matroid family '" + family + "' in field 'family'");
}

Json matroid_to_json(const Matroid& m) {
  Json j;
  j["family"] = m.family();
  if (const auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    j["n"] = u->ground_size();
    j["rank"] = u->rank_bound();
  } else if (const auto* p = dynamic_cast<const PartitionMatroid*>(&m)) {
    j["blocks"] = p->block_of();
    j["capacities"] = p->capacity();
  } else if (const auto* g = dynamic_cast<const GraphicMatroid*>(&m)) {
    j["vertices"] = g->vertices();
    Json edges = Json::array();
    for (const auto& [a, b] : g->edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
  } else if (const auto* l = dynamic_cast<const LinearMatroid*>(&m)) {
    j["rows"] = l->rows();
    j["cols"] = l->ground_size();
    j["modulus"] = l->modulus();
    Json matrix = Json::array();
    for (std::size_t r = 0; r < l->rows(); ++r) {
      for (std::size_t c = 0; c < l->ground_size(); ++c) {
        matrix.push_back(l->entry(r, c));
      }
    }
    j["matrix"] = std::move(matrix);
  } else if (const auto* d = dynamic_cast<const DirectSumMatroid*>(&m)) {
    Json parts = Json::array();
    for (const auto& part : d->parts()) parts.push_back(matroid_to_json(*part));
    j["parts"] = std::move(parts);
  } else {
    throw DomainError("cannot serialize matroid family '" + m.family() + "'");
  }
  return j;
}

MatroidPtr load_matroid(const std::string& source) {
  if (source.rfind("gen:", 0) == 0) return generate(parse_generator_spec(source));
  Json j;
  try {
    j = Json::parse(read_file(source));
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("matroid file '" + source + "' is not valid JSON: " + e.what());
  }
  return matroid_from_json(j);
}

AlgorithmConfig config_from_json(const Json& j, AlgorithmConfig c) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "samples") c.samples = value.get<std::size_t>();
      else if (key == "alpha_samples") c.alpha_samples = value.get<std::size_t>();
      else if (key == "group_size") c.group_size = value.get<std::size_t>();
      else if (key == "groups") c.groups = value.get<std::size_t>();
      else if (key == "c_rem") c.c_rem = value.get<double>();
      else if (key == "eps_q") c.eps_q = value.get<double>();
      else if (key == "strategy") {
        const auto s = value.get<std::string>();
        if (s != "greedy" && s != "exact") throw DomainError("config field 'strategy' must be greedy or exact");
        c.strategy = s == "exact" ? PeelStrategy::kExact : PeelStrategy::kGreedy;
      } else if (key == "exact_cap") c.exact_cap = value.get<std::size_t>();
      else if (key == "singleton_only") c.singleton_only = value.get<bool>();
      else if (key == "small_circuit_cutoff") c.small_circuit_cutoff = value.get<std::size_t>();
      else if (key == "contraction_trials") c.contraction_trials = value.get<std::size_t>();
      else if (key == "contraction_mode") {
        const auto s = value.get<std::string>();
        if (s != "longest_prefix" && s != "fixed_length") {
          throw DomainError("config field 'contraction_mode' must be longest_prefix or fixed_length");
        }
        c.contraction_mode = s == "fixed_length" ? ContractionMode::kFixedLength
                                                 : ContractionMode::kLongestPrefix;
      } else if (key == "recovery_factor") c.recovery_factor = value.get<double>();
      else if (key == "witness_factor") c.witness_factor = value.get<double>();
      else if (key == "f_exponent") c.f_exponent = value.get<double>();
      else if (key == "f_log_power") c.f_log_power = value.get<double>();
      else if (key == "f_min") c.f_min = value.get<double>();
      else if (key == "t_exponent") c.t_exponent = value.get<double>();
      else if (key == "kuw_threshold") c.kuw_threshold = value.get<std::size_t>();
      else if (key == "verify") c.verify = value.get<bool>();
      else if (key == "check_deletions") c.check_deletions = value.get<bool>();
      else throw DomainError("unknown config field '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw DomainError("config field '" + key + "' has the wrong type");
    }
  }
  return c;
}

Json config_to_json(const AlgorithmConfig& c) {
  Json j;
  j["samples"] = c.samples;
  j["alpha_samples"] = c.alpha_samples;
  j["group_size"] = c.group_size;
  j["groups"] = c.groups;
  j["c_rem"] = c.c_rem;
  j["eps_q"] = c.eps_q;
  j["strategy"] = to_string(c.strategy);
  j["exact_cap"] = c.exact_cap;
  j["singleton_only"] = c.singleton_only;
  j["small_circuit_cutoff"] = c.small_circuit_cutoff;
  j["contraction_trials"] = c.contraction_trials;
  j["contraction_mode"] = to_string(c.contraction_mode);
  j["recovery_factor"] = c.recovery_factor;
  j["witness_factor"] = c.witness_factor;
  j["f_exponent"] = c.f_exponent;
  j["f_log_power"] = c.f_log_power;
  j["f_min"] = c.f_min;
  j["t_exponent"] = c.t_exponent;
  j["kuw_threshold"] = c.kuw_threshold;
  j["verify"] = c.verify;
  j["check_deletions"] = c.check_deletions;
  return j;
}

Json ledger_to_json(const RoundLedger& ledger) {
  Json j;
  j["seed"] = ledger.seed;
  j["budget_cap"] = ledger.budget_cap;
  j["rounds"] = ledger.rounds;
  j["total_queries"] = ledger.total_queries;
  j["unbatched_rounds"] = ledger.rounds + ledger.unbatched_extra;
  j["per_round"] = ledger.per_round;
  return j;
}

Json peel_record_to_json(const PeelRecord& rec) {
  Json j;
  j["index"] = rec.index;
  j["size"] = rec.set.size();
  j["alpha"] = rec.alpha;
  j["size_bucket"] = rec.size_bucket;
  if (rec.good) j["good"] = *rec.good;
  j["progress_kind"] = to_string(rec.progress_kind);
  j["progress_count"] = rec.progress_count;
  j["q_hat"] = rec.q_hat;
  j["contract_lhs"] = rec.contract_lhs;
  j["delete_lhs"] = rec.delete_lhs;
  j["target"] = rec.target;
  j["set"] = rec.set;
  return j;
}

Json run_result_to_json(const RunResult& result, bool with_trace) {
  Json j;
  j["algorithm"] = result.algorithm;
  j["basis_size"] = result.basis.size();
  j["basis"] = result.basis;
  j["ledger"] = ledger_to_json(result.ledger);
  Json reasons = Json::array();
  for (StopReason r : result.stop_reasons) reasons.push_back(to_string(r));
  j["stop_reasons"] = std::move(reasons);
  j["deletion_checks"] = result.deletion_checks;
  j["unsound_deletions"] = result.unsound_deletions;
  j["fallbacks"] = result.fallbacks;
  if (with_trace) {
    Json trace = Json::array();
    for (const auto& rec : result.peel_trace) trace.push_back(peel_record_to_json(rec));
    j["peel_trace"] = std::move(trace);
  }
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace parbasis
