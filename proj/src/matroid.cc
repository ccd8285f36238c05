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

#include "parbasis/matroid.h"

#include <algorithm>
#include <numeric>

namespace parbasis {

namespace {

void check_elements(const Matroid& m, std::span<const ElementId> elements) {
  std::vector<ElementId> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("query contains a repeated element");
  }
  if (!sorted.empty() && sorted.back() >= m.ground_size()) {
    throw DomainError("element " + std::to_string(sorted.back()) +
                      " outside ground set of size " +
                      std::to_string(m.ground_size()));
  }
}

// ---------------------------------------------------------------- uniform

class UniformState final : public IndependenceState {
 public:
  explicit UniformState(std::size_t rank) : rank_(rank) {}
  bool can_add(ElementId) const override { return added_.size() < rank_; }
  void add(ElementId e) override { added_.push_back(e); }
  void circuit_with(ElementId e, ElementSet& out) const override {
    out.assign(added_.begin(), added_.end());
    out.push_back(e);
    std::sort(out.begin(), out.end());
  }
  void mark_baseline() override { baseline_ = added_.size(); }
  void reset() override { added_.resize(baseline_); }
  std::size_t size() const override { return added_.size(); }

 private:
  std::size_t rank_;
  std::vector<ElementId> added_;
  std::size_t baseline_ = 0;
};

// -------------------------------------------------------------- partition

class PartitionState final : public IndependenceState {
 public:
  explicit PartitionState(const PartitionMatroid& m)
      : m_(m), members_(m.capacity().size()) {}
  bool can_add(ElementId e) const override {
    const auto b = m_.block_of()[e];
    return members_[b].size() < m_.capacity()[b];
  }
  void add(ElementId e) override {
    members_[m_.block_of()[e]].push_back(e);
    log_.push_back(e);
  }
  void circuit_with(ElementId e, ElementSet& out) const override {
    const auto& block = members_[m_.block_of()[e]];
    out.assign(block.begin(), block.end());
    out.push_back(e);
    std::sort(out.begin(), out.end());
  }
  void mark_baseline() override { baseline_ = log_.size(); }
  void reset() override {
    while (log_.size() > baseline_) {
      members_[m_.block_of()[log_.back()]].pop_back();
      log_.pop_back();
    }
  }
  std::size_t size() const override { return log_.size(); }

 private:
  const PartitionMatroid& m_;
  std::vector<std::vector<ElementId>> members_;
  std::vector<ElementId> log_;
  std::size_t baseline_ = 0;
};

// ---------------------------------------------------------------- graphic

// Union-find with union by size and no path compression, so unions can be
// rolled back. The forest itself is kept as adjacency lists for circuit
// extraction.
class GraphicState final : public IndependenceState {
 public:
  explicit GraphicState(const GraphicMatroid& m)
      : m_(m),
        parent_(m.vertices()),
        weight_(m.vertices(), 1),
        adjacency_(m.vertices()),
        stamp_(m.vertices(), 0),
        via_(m.vertices()) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  bool can_add(ElementId e) const override {
    const auto [u, v] = m_.edges()[e];
    return find(u) != find(v);
  }

  void add(ElementId e) override {
    const auto [u, v] = m_.edges()[e];
    auto a = find(u);
    auto b = find(v);
    if (weight_[a] < weight_[b]) std::swap(a, b);
    parent_[b] = a;
    weight_[a] += weight_[b];
    unions_.push_back(b);
    adjacency_[u].push_back({v, e});
    adjacency_[v].push_back({u, e});
    log_.push_back(e);
  }

  void circuit_with(ElementId e, ElementSet& out) const override {
    out.clear();
    out.push_back(e);
    const auto [u, v] = m_.edges()[e];
    if (u != v) {
      // Depth-first search over the forest from u until v is reached.
      ++current_stamp_;
      std::vector<std::uint32_t> stack{u};
      stamp_[u] = current_stamp_;
      while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        if (x == v) break;
        for (const auto& [y, edge] : adjacency_[x]) {
          if (stamp_[y] == current_stamp_) continue;
          stamp_[y] = current_stamp_;
          via_[y] = {x, edge};
          stack.push_back(y);
        }
      }
      for (auto x = v; x != u; x = via_[x].first) out.push_back(via_[x].second);
    }
    std::sort(out.begin(), out.end());
  }

  void mark_baseline() override { baseline_ = log_.size(); }

  void reset() override {
    while (log_.size() > baseline_) {
      const auto e = log_.back();
      const auto [u, v] = m_.edges()[e];
      adjacency_[u].pop_back();
      adjacency_[v].pop_back();
      const auto b = unions_.back();
      const auto a = parent_[b];
      weight_[a] -= weight_[b];
      parent_[b] = b;
      unions_.pop_back();
      log_.pop_back();
    }
  }

  std::size_t size() const override { return log_.size(); }

 private:
  std::uint32_t find(std::uint32_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  const GraphicMatroid& m_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> weight_;
  std::vector<std::uint32_t> unions_;
  std::vector<std::vector<std::pair<std::uint32_t, ElementId>>> adjacency_;
  std::vector<ElementId> log_;
  std::size_t baseline_ = 0;
  mutable std::vector<std::uint64_t> stamp_;
  mutable std::uint64_t current_stamp_ = 0;
  mutable std::vector<std::pair<std::uint32_t, ElementId>> via_;
};

// ----------------------------------------------------------------- linear

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Row-echelon basis of the added columns. Row k is stored reduced mod p with
// a unit at its pivot, together with the coefficients that were eliminated
// while adding it; unrolling those coefficients turns a reduction in row
// space into a combination of added columns, which gives the fundamental
// circuit. Reductions accumulate in 64 bits and only the pivot entry is
// reduced mod p at each step.
class LinearState final : public IndependenceState {
 public:
  explicit LinearState(const LinearMatroid& m)
      : m_(m), p_(m.modulus()), work_(m.rows()) {}

  bool can_add(ElementId e) const override {
    reduce(e, nullptr);
    return std::any_of(work_.begin(), work_.end(),
                       [this](std::uint64_t x) { return x % p_ != 0; });
  }

  void add(ElementId e) override {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> eliminated;
    reduce(e, &eliminated);
    std::vector<std::uint32_t> row(work_.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] = static_cast<std::uint32_t>(work_[i] % p_);
    }
    const auto pivot = static_cast<std::size_t>(
        std::find_if(row.begin(), row.end(),
                     [](std::uint32_t x) { return x != 0; }) -
        row.begin());
    const auto inv = pow_mod(row[pivot], p_ - 2, p_);
    for (auto& v : row) {
      v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * inv % p_);
    }
    rows_.push_back(std::move(row));
    eliminated_.push_back(std::move(eliminated));
    inverses_.push_back(inv);
    pivots_.push_back(pivot);
    added_.push_back(e);
  }

  void circuit_with(ElementId e, ElementSet& out) const override {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> used;
    reduce(e, &used);
    // col(e) = sum_k lambda_k row_k. Row k equals
    // inv_k (col(a_k) - sum_j c_kj row_j), so walking k downward moves every
    // row coefficient onto the column coefficient mu_k.
    std::vector<std::uint64_t> lambda(added_.size(), 0);
    for (const auto& [k, c] : used) lambda[k] = c;
    std::vector<std::uint32_t> mu(added_.size(), 0);
    for (std::size_t k = added_.size(); k-- > 0;) {
      const auto l = static_cast<std::uint32_t>(lambda[k] % p_);
      if (l == 0) continue;
      const std::uint64_t scaled = static_cast<std::uint64_t>(l) * inverses_[k] % p_;
      mu[k] = static_cast<std::uint32_t>(scaled);
      for (const auto& [j, c] : eliminated_[k]) {
        lambda[j] = (lambda[j] + scaled * (p_ - c)) % p_;
      }
    }
    out.clear();
    out.push_back(e);
    for (std::size_t i = 0; i < added_.size(); ++i) {
      if (mu[i] != 0) out.push_back(added_[i]);
    }
    std::sort(out.begin(), out.end());
  }

  void mark_baseline() override { baseline_ = added_.size(); }

  void reset() override {
    rows_.resize(baseline_);
    eliminated_.resize(baseline_);
    inverses_.resize(baseline_);
    pivots_.resize(baseline_);
    added_.resize(baseline_);
  }

  std::size_t size() const override { return added_.size(); }

 private:
  // Leaves col(e) - sum_k c_k row_k in work_ (entries unreduced) and, when
  // `used` is set, records every nonzero (k, c_k).
  void reduce(ElementId e,
              std::vector<std::pair<std::uint32_t, std::uint32_t>>* used) const {
    const auto col = m_.column(e);
    std::copy(col.begin(), col.end(), work_.begin());
    const std::size_t rows = work_.size();
    std::uint64_t* w = work_.data();
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto c = static_cast<std::uint32_t>(w[pivots_[k]] % p_);
      if (c == 0) continue;
      if (used) used->emplace_back(static_cast<std::uint32_t>(k), c);
      const std::uint64_t neg = p_ - c;
      const std::uint32_t* r = rows_[k].data();
      for (std::size_t i = 0; i < rows; ++i) w[i] += neg * r[i];
    }
  }

  const LinearMatroid& m_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> eliminated_;
  std::vector<std::uint32_t> inverses_;
  std::vector<std::size_t> pivots_;
  std::vector<ElementId> added_;
  std::size_t baseline_ = 0;
  mutable std::vector<std::uint64_t> work_;
};

// ------------------------------------------------------------- direct sum

class DirectSumState final : public IndependenceState {
 public:
  explicit DirectSumState(const DirectSumMatroid& m) : m_(m) {
    for (const auto& part : m.parts()) parts_.push_back(part->new_state());
  }
  bool can_add(ElementId e) const override {
    const auto p = m_.part_of(e);
    return parts_[p]->can_add(e - m_.offset(p));
  }
  void add(ElementId e) override {
    const auto p = m_.part_of(e);
    parts_[p]->add(e - m_.offset(p));
    ++size_;
  }
  void circuit_with(ElementId e, ElementSet& out) const override {
    const auto p = m_.part_of(e);
    parts_[p]->circuit_with(e - m_.offset(p), out);
    for (auto& x : out) x += m_.offset(p);
  }
  void mark_baseline() override {
    for (auto& s : parts_) s->mark_baseline();
    baseline_ = size_;
  }
  void reset() override {
    for (auto& s : parts_) s->reset();
    size_ = baseline_;
  }
  std::size_t size() const override { return size_; }

 private:
  const DirectSumMatroid& m_;
  std::vector<std::unique_ptr<IndependenceState>> parts_;
  std::size_t size_ = 0;
  std::size_t baseline_ = 0;
};

}  // namespace

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool Matroid::is_independent(std::span<const ElementId> elements) const {
  check_elements(*this, elements);
  auto state = new_state();
  for (ElementId e : elements) {
    if (!state->can_add(e)) return false;
    state->add(e);
  }
  return true;
}

std::size_t Matroid::rank(std::span<const ElementId> elements) const {
  check_elements(*this, elements);
  auto state = new_state();
  for (ElementId e : elements) {
    if (state->can_add(e)) state->add(e);
  }
  return state->size();
}

std::size_t Matroid::rank() const {
  std::vector<ElementId> all(ground_size());
  std::iota(all.begin(), all.end(), 0u);
  return rank(all);
}

UniformMatroid::UniformMatroid(std::size_t n, std::size_t rank)
    : n_(n), rank_(std::min(rank, n)) {}

std::unique_ptr<IndependenceState> UniformMatroid::new_state() const {
  return std::make_unique<UniformState>(rank_);
}

PartitionMatroid::PartitionMatroid(std::vector<std::uint32_t> block_of,
                                   std::vector<std::uint32_t> capacity)
    : block_of_(std::move(block_of)), capacity_(std::move(capacity)) {
  for (auto b : block_of_) {
    if (b >= capacity_.size()) {
      throw DomainError("partition block index " + std::to_string(b) +
                        " has no capacity entry");
    }
  }
}

std::unique_ptr<IndependenceState> PartitionMatroid::new_state() const {
  return std::make_unique<PartitionState>(*this);
}

GraphicMatroid::GraphicMatroid(std::size_t vertices, std::vector<Edge> edges)
    : vertices_(vertices), edges_(std::move(edges)) {
  for (const auto& [u, v] : edges_) {
    if (u >= vertices_ || v >= vertices_) {
      throw DomainError("edge endpoint outside vertex range");
    }
  }
}

std::unique_ptr<IndependenceState> GraphicMatroid::new_state() const {
  return std::make_unique<GraphicState>(*this);
}

LinearMatroid::LinearMatroid(std::size_t rows, std::size_t cols,
                             std::uint32_t modulus,
                             std::vector<std::int64_t> row_major)
    : rows_(rows), cols_(cols), modulus_(modulus), columns_(rows * cols) {
  if (!is_prime(modulus) || modulus > (1u << 16)) {
    throw DomainError("linear matroid modulus must be a prime <= 65536");
  }
  if (row_major.size() != rows * cols) {
    throw DomainError("linear matroid matrix has " +
                      std::to_string(row_major.size()) + " entries, expected " +
                      std::to_string(rows * cols));
  }
  const auto p = static_cast<std::int64_t>(modulus);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      columns_[c * rows + r] =
          static_cast<std::uint32_t>(((row_major[r * cols + c] % p) + p) % p);
    }
  }
}

std::unique_ptr<IndependenceState> LinearMatroid::new_state() const {
  return std::make_unique<LinearState>(*this);
}

DirectSumMatroid::DirectSumMatroid(std::vector<MatroidPtr> parts)
    : parts_(std::move(parts)) {
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    offsets_.push_back(static_cast<ElementId>(part_of_.size()));
    part_of_.insert(part_of_.end(), parts_[p]->ground_size(),
                    static_cast<std::uint32_t>(p));
  }
}

std::unique_ptr<IndependenceState> DirectSumMatroid::new_state() const {
  return std::make_unique<DirectSumState>(*this);
}

}  // namespace parbasis
