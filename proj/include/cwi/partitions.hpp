// Copyright 2026 The cwi Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cwi/table.hpp"

namespace cwi {

/// Partition of the index range [0, n). Canonical: each block ascending,
/// blocks ordered by their minimum element.
class Partition {
 public:
  Partition() = default;
  /// Builds from an arbitrary block id per element.
  static Partition from_block_ids(const std::vector<std::size_t>& ids);
  /// Throws Error(kInvalidArgument) unless `blocks` is a partition of [0, n).
  static Partition from_blocks(std::size_t n, std::vector<std::vector<std::size_t>> blocks);

  std::size_t universe_size() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }
  std::size_t block_of(std::size_t element) const { return block_of_[element]; }
  bool same_block(std::size_t i, std::size_t j) const { return block_of_[i] == block_of_[j]; }

  /// Every block of *this lies inside one block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Set of ordered index pairs over [0, n), stored as a dense bit matrix.
class BinaryRelation {
 public:
  explicit BinaryRelation(std::size_t n = 0) : n_(n), bits_(n * n, false) {}
  static BinaryRelation of(const Partition& p);

  std::size_t universe_size() const { return n_; }
  bool contains(std::size_t i, std::size_t k) const { return bits_[i * n_ + k]; }
  void insert(std::size_t i, std::size_t k) { bits_[i * n_ + k] = true; }
  std::size_t pair_count() const;
  bool is_equivalence() const;
  /// Every pair of *this is also in `other`.
  bool subset_of(const BinaryRelation& other) const;

  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

/// θ(V): rows grouped by their projection on `vars`.
Partition theta(const SupportSet& support, VarSet vars);

/// Rows matching `context`, densely re-indexed; labels are kept.
SupportSet restrict_context(const SupportSet& support, const PartialConfig& context);

/// Relational product: (i,k) iff some j has i ~p j and j ~q k.
BinaryRelation compose(const Partition& p, const Partition& q);

/// Finest partition coarser than both (transitive closure of p ∪ q).
Partition join(const Partition& p, const Partition& q);

struct CommuteResult {
  bool commutes = false;
  /// The common composition, present when commutes.
  std::optional<Partition> partition;
  /// (i,k) lies in exactly one of p∘q and q∘p; present when not commuting.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  /// True when the witness is in p∘q (and not in q∘p).
  bool witness_in_pq = false;
};

/// p∘q = q∘p. The check runs against the union-find join; the quadratic
/// compositions are only materialized to extract a witness on failure.
CommuteResult commutes(const Partition& p, const Partition& q);

/// Distinct projections on `vars` of the rows in `block`, ascending.
std::vector<std::vector<std::uint32_t>> projected_domain(const std::vector<std::size_t>& block,
                                                         const SupportSet& support, VarSet vars);

}  // namespace cwi
