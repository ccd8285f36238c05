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

#include "parbasis/generators.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "parbasis/rng.h"
#include "parbasis/types.h"

namespace parbasis {
namespace {

std::uint64_t parse_uint(const std::string& field, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw DomainError("generator field '" + field +
                      "' is not a non-negative integer: '" + value + "'");
  }
  return out;
}

std::size_t param(const GeneratorSpec& spec, const std::string& key,
                  std::size_t fallback) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  return static_cast<std::size_t>(parse_uint(key, it->second));
}

MatroidPtr make_partition(std::size_t n, std::size_t block, std::size_t cap) {
  block = std::max<std::size_t>(block, 1);
  std::vector<std::uint32_t> block_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    block_of[i] = static_cast<std::uint32_t>(i / block);
  }
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<std::uint32_t> capacity(blocks, static_cast<std::uint32_t>(cap));
  return std::make_shared<PartitionMatroid>(std::move(block_of),
                                            std::move(capacity));
}

MatroidPtr make_linear(std::size_t n, std::size_t rows, std::uint32_t p,
                       Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
  std::vector<std::int64_t> matrix(rows * n);
  for (auto& x : matrix) x = entry(rng);
  return std::make_shared<LinearMatroid>(rows, n, p, std::move(matrix));
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
  const std::string prefix = "gen:";
  if (text.rfind(prefix, 0) != 0) {
    throw DomainError("generator spec must start with 'gen:': '" + text + "'");
  }
  GeneratorSpec spec;
  const std::string rest = text.substr(prefix.size());
  const auto colon = rest.find(':');
  spec.family = rest.substr(0, colon);
  if (!is_known_family(spec.family)) {
    throw DomainError("unknown family '" + spec.family + "' in field 'family'");
  }
  bool have_n = false;
  if (colon != std::string::npos) {
    std::string list = rest.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= list.size()) {
      const auto comma = std::min(list.find(',', pos), list.size());
      const std::string item = list.substr(pos, comma - pos);
      pos = comma + 1;
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw DomainError("generator field '" + item + "' has no value");
      }
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "n") {
        spec.n = static_cast<std::size_t>(parse_uint(key, value));
        have_n = true;
      } else if (key == "seed") {
        spec.seed = parse_uint(key, value);
      } else {
        parse_uint(key, value);
        spec.params[key] = value;
      }
    }
  }
  if (!have_n) throw DomainError("generator spec is missing field 'n'");
  return spec;
}

std::string to_string(const GeneratorSpec& spec) {
  std::string out = "gen:" + spec.family + ":n=" + std::to_string(spec.n) +
                    ",seed=" + std::to_string(spec.seed);
  for (const auto& [k, v] : spec.params) out += "," + k + "=" + v;
  return out;
}

const std::vector<std::string>& suite_families() {
  static const std::vector<std::string> kFamilies = {
      "uniform",    "partition",  "graphic_random", "graphic_complete",
      "linear_gf2", "linear_gf7", "direct_sum",     "rank1",
      "free"};
  return kFamilies;
}

bool is_known_family(const std::string& family) {
  const auto& all = suite_families();
  return std::find(all.begin(), all.end(), family) != all.end();
}

MatroidPtr generate(const GeneratorSpec& spec) {
  const std::size_t n = spec.n;
  Rng rng = Rng(mix_seed(spec.seed, "instance:" + spec.family));
  const std::string& f = spec.family;
  if (f == "uniform") {
    return std::make_shared<UniformMatroid>(n, std::min(n, param(spec, "r", n / 2)));
  }
  if (f == "rank1") return std::make_shared<UniformMatroid>(n, std::min<std::size_t>(n, 1));
  if (f == "free") return std::make_shared<UniformMatroid>(n, n);
  if (f == "partition") {
    return make_partition(n, param(spec, "block", 8), param(spec, "cap", 2));
  }
  if (f == "graphic_random") {
    const std::size_t v = param(spec, "vertices", (2 * n + 2) / 3 + 1);
    if (v < 2 && n > 0) throw DomainError("graphic field 'vertices' must be >= 2");
    std::uniform_int_distribution<std::uint32_t> pick(
        0, static_cast<std::uint32_t>(std::max<std::size_t>(v, 2) - 1));
    std::vector<GraphicMatroid::Edge> edges;
    edges.reserve(n);
    while (edges.size() < n) {
      const std::uint32_t a = pick(rng);
      const std::uint32_t b = pick(rng);
      if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    return std::make_shared<GraphicMatroid>(v, std::move(edges));
  }
  if (f == "graphic_complete") {
    std::size_t v = 1;
    while (v * (v - 1) / 2 < n) ++v;
    std::vector<GraphicMatroid::Edge> edges;
    for (std::uint32_t a = 0; a < v && edges.size() < n; ++a) {
      for (std::uint32_t b = a + 1; b < v && edges.size() < n; ++b) {
        edges.emplace_back(a, b);
      }
    }
    return std::make_shared<GraphicMatroid>(v, std::move(edges));
  }
  if (f == "linear_gf2" || f == "linear_gf7") {
    const std::size_t rows =
        param(spec, "rows", std::max<std::size_t>(1, std::min<std::size_t>(32, n / 2)));
    return make_linear(n, rows, f == "linear_gf2" ? 2 : 7, rng);
  }
  if (f == "direct_sum") {
    const std::size_t half = n / 2;
    std::vector<MatroidPtr> parts;
    parts.push_back(std::make_shared<UniformMatroid>(half, half / 4));
    parts.push_back(make_partition(n - half, param(spec, "block", 8),
                                   param(spec, "cap", 2)));
    return std::make_shared<DirectSumMatroid>(std::move(parts));
  }
  throw DomainError("unknown family '" + f + "' in field 'family'");
}

}  // namespace parbasis
