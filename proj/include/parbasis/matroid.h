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

// Concrete matroid families behind a common independence-oracle interface.
//
// A Matroid is immutable after construction and safe to share across
// threads. All mutable evaluation state lives in an IndependenceState, which
// grows an independent set one element at a time. States support a
// "baseline" (typically a contracted set) that reset() returns to in time
// proportional to the work done since the baseline, so that many queries can
// be evaluated against the same contraction cheaply.

#ifndef PARBASIS_MATROID_H_
#define PARBASIS_MATROID_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parbasis/types.h"

namespace parbasis {

class IndependenceState {
 public:
  virtual ~IndependenceState() = default;

  // Whether the current set plus `e` is independent. `e` must not already be
  // in the set.
  virtual bool can_add(ElementId e) const = 0;
  // Requires can_add(e).
  virtual void add(ElementId e) = 0;
  // Requires !can_add(e). Writes the unique circuit inside current + {e}
  // (it contains e), sorted.
  virtual void circuit_with(ElementId e, ElementSet& out) const = 0;
  // Makes the current set the state reset() returns to.
  virtual void mark_baseline() = 0;
  virtual void reset() = 0;
  // Number of elements added since construction (baseline included).
  virtual std::size_t size() const = 0;
};

class Matroid {
 public:
  virtual ~Matroid() = default;

  virtual std::size_t ground_size() const = 0;
  virtual std::string family() const = 0;
  virtual std::unique_ptr<IndependenceState> new_state() const = 0;

  // Checks every id is in range and distinct, then evaluates. Throws
  // DomainError otherwise.
  bool is_independent(std::span<const ElementId> elements) const;
  // Exact rank of a subset by greedy insertion.
  std::size_t rank(std::span<const ElementId> elements) const;
  std::size_t rank() const;
};

using MatroidPtr = std::shared_ptr<const Matroid>;

// U(n, r): every set of size at most r is independent.
class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(std::size_t n, std::size_t rank);
  std::size_t ground_size() const override { return n_; }
  std::string family() const override { return "uniform"; }
  std::unique_ptr<IndependenceState> new_state() const override;
  std::size_t rank_bound() const { return rank_; }

 private:
  std::size_t n_;
  std::size_t rank_;
};

// Each element belongs to one block; a set is independent when it uses at
// most capacity[b] elements of every block b.
class PartitionMatroid final : public Matroid {
 public:
  PartitionMatroid(std::vector<std::uint32_t> block_of,
                   std::vector<std::uint32_t> capacity);
  std::size_t ground_size() const override { return block_of_.size(); }
  std::string family() const override { return "partition"; }
  std::unique_ptr<IndependenceState> new_state() const override;
  const std::vector<std::uint32_t>& block_of() const { return block_of_; }
  const std::vector<std::uint32_t>& capacity() const { return capacity_; }

 private:
  std::vector<std::uint32_t> block_of_;
  std::vector<std::uint32_t> capacity_;
};

// Cycle matroid of a multigraph: element i is edge i, independent sets are
// forests. Self-loops are matroid loops.
class GraphicMatroid final : public Matroid {
 public:
  using Edge = std::pair<std::uint32_t, std::uint32_t>;
  GraphicMatroid(std::size_t vertices, std::vector<Edge> edges);
  std::size_t ground_size() const override { return edges_.size(); }
  std::string family() const override { return "graphic"; }
  std::unique_ptr<IndependenceState> new_state() const override;
  std::size_t vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::size_t vertices_;
  std::vector<Edge> edges_;
};

// Column matroid of a rows x cols matrix over GF(p), p prime, p <= 2^16.
class LinearMatroid final : public Matroid {
 public:
  // `row_major` has rows*cols entries; entries are reduced mod p.
  LinearMatroid(std::size_t rows, std::size_t cols, std::uint32_t modulus,
                std::vector<std::int64_t> row_major);
  std::size_t ground_size() const override { return cols_; }
  std::string family() const override { return "linear"; }
  std::unique_ptr<IndependenceState> new_state() const override;
  std::size_t rows() const { return rows_; }
  std::uint32_t modulus() const { return modulus_; }
  // Column-major storage: column c occupies [c*rows, (c+1)*rows).
  std::span<const std::uint32_t> column(ElementId c) const {
    return {columns_.data() + static_cast<std::size_t>(c) * rows_, rows_};
  }
  std::int64_t entry(std::size_t r, std::size_t c) const {
    return columns_[c * rows_ + r];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t modulus_;
  std::vector<std::uint32_t> columns_;
};

// Direct sum; element ids are assigned part by part in order.
class DirectSumMatroid final : public Matroid {
 public:
  explicit DirectSumMatroid(std::vector<MatroidPtr> parts);
  std::size_t ground_size() const override { return part_of_.size(); }
  std::string family() const override { return "direct_sum"; }
  std::unique_ptr<IndependenceState> new_state() const override;
  const std::vector<MatroidPtr>& parts() const { return parts_; }
  std::size_t part_of(ElementId e) const { return part_of_[e]; }
  ElementId offset(std::size_t part) const { return offsets_[part]; }

 private:
  std::vector<MatroidPtr> parts_;
  std::vector<std::uint32_t> part_of_;
  std::vector<ElementId> offsets_;
};

bool is_prime(std::uint32_t p);

}  // namespace parbasis

#endif  // PARBASIS_MATROID_H_
