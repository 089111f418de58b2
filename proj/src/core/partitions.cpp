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

#include "cwi/partitions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cwi/error.hpp"

namespace cwi {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

void require_same_universe(const Partition& p, const Partition& q) {
  if (p.universe_size() != q.universe_size()) {
    fail(ErrorCode::kInvalidArgument, "partitions are over different supports");
  }
}

}  // namespace

Partition Partition::from_block_ids(const std::vector<std::size_t>& ids) {
  Partition out;
  out.block_of_.resize(ids.size());
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, inserted] = renumber.try_emplace(ids[i], out.blocks_.size());
    if (inserted) out.blocks_.emplace_back();
    out.blocks_[it->second].push_back(i);
    out.block_of_[i] = it->second;
  }
  return out;
}

Partition Partition::from_blocks(std::size_t n, std::vector<std::vector<std::size_t>> blocks) {
  std::vector<std::size_t> ids(n, SIZE_MAX);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) fail(ErrorCode::kInvalidArgument, "empty block");
    for (auto e : blocks[b]) {
      if (e >= n || ids[e] != SIZE_MAX) {
        fail(ErrorCode::kInvalidArgument, "blocks overlap or leave the index range");
      }
      ids[e] = b;
    }
  }
  if (std::find(ids.begin(), ids.end(), SIZE_MAX) != ids.end()) {
    fail(ErrorCode::kInvalidArgument, "blocks do not cover the index range");
  }
  return from_block_ids(ids);
}

bool Partition::refines(const Partition& coarser) const {
  require_same_universe(*this, coarser);
  for (const auto& b : blocks_) {
    for (auto e : b) {
      if (!coarser.same_block(b.front(), e)) return false;
    }
  }
  return true;
}

BinaryRelation BinaryRelation::of(const Partition& p) {
  BinaryRelation r(p.universe_size());
  for (const auto& b : p.blocks()) {
    for (auto i : b) {
      for (auto k : b) r.insert(i, k);
    }
  }
  return r;
}

std::size_t BinaryRelation::pair_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool BinaryRelation::is_equivalence() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!contains(i, i)) return false;
    for (std::size_t k = 0; k < n_; ++k) {
      if (contains(i, k) != contains(k, i)) return false;
      if (!contains(i, k)) continue;
      for (std::size_t m = 0; m < n_; ++m) {
        if (contains(k, m) && !contains(i, m)) return false;
      }
    }
  }
  return true;
}

bool BinaryRelation::subset_of(const BinaryRelation& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

Partition theta(const SupportSet& support, VarSet vars) {
  if (!vars.subset_of(support.schema().all())) {
    fail(ErrorCode::kSchema, "theta over variables outside the schema");
  }
  std::map<std::vector<std::uint32_t>, std::size_t> keys;
  std::vector<std::size_t> ids(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    ids[i] = keys.try_emplace(project(support[i].config, vars), keys.size()).first->second;
  }
  return Partition::from_block_ids(ids);
}

SupportSet restrict_context(const SupportSet& support, const PartialConfig& context) {
  std::vector<SupportRow> rows;
  for (const auto& r : support.rows()) {
    if (context.matches(r.config)) rows.push_back(r);
  }
  return SupportSet(support.schema_ptr(), std::move(rows));
}

BinaryRelation compose(const Partition& p, const Partition& q) {
  require_same_universe(p, q);
  BinaryRelation r(p.universe_size());
  // Every element of a p-block reaches the union of the q-blocks meeting it.
  for (const auto& block : p.blocks()) {
    std::vector<std::size_t> reach;
    std::vector<bool> seen_q(q.block_count(), false);
    for (auto j : block) {
      const auto qb = q.block_of(j);
      if (seen_q[qb]) continue;
      seen_q[qb] = true;
      reach.insert(reach.end(), q.block(qb).begin(), q.block(qb).end());
    }
    for (auto i : block) {
      for (auto k : reach) r.insert(i, k);
    }
  }
  return r;
}

Partition join(const Partition& p, const Partition& q) {
  require_same_universe(p, q);
  UnionFind uf(p.universe_size());
  for (const auto* part : {&p, &q}) {
    for (const auto& b : part->blocks()) {
      for (auto e : b) uf.unite(b.front(), e);
    }
  }
  std::vector<std::size_t> ids(p.universe_size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = uf.find(i);
  return Partition::from_block_ids(ids);
}

CommuteResult commutes(const Partition& p, const Partition& q) {
  require_same_universe(p, q);
  Partition j = join(p, q);

  // p∘q ⊆ join always; equality holds iff each p-block reaches its whole
  // join block through q, and then q∘p = (p∘q)ᵀ = join as well.
  bool equal = true;
  std::vector<bool> seen_q(q.block_count(), false);
  for (const auto& block : p.blocks()) {
    std::size_t reach = 0;
    std::vector<std::size_t> touched;
    for (auto e : block) {
      const auto qb = q.block_of(e);
      if (seen_q[qb]) continue;
      seen_q[qb] = true;
      touched.push_back(qb);
      reach += q.block(qb).size();
    }
    for (auto qb : touched) seen_q[qb] = false;
    if (reach != j.block(j.block_of(block.front())).size()) {
      equal = false;
      break;
    }
  }

  CommuteResult out;
  if (equal) {
    out.commutes = true;
    out.partition = std::move(j);
    return out;
  }
  const BinaryRelation pq = compose(p, q);
  const BinaryRelation qp = compose(q, p);
  const std::size_t n = p.universe_size();
  for (std::size_t i = 0; i < n && !out.witness; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (pq.contains(i, k) != qp.contains(i, k)) {
        out.witness = std::make_pair(i, k);
        out.witness_in_pq = pq.contains(i, k);
        break;
      }
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> projected_domain(const std::vector<std::size_t>& block,
                                                         const SupportSet& support, VarSet vars) {
  std::set<std::vector<std::uint32_t>> values;
  for (auto i : block) values.insert(project(support[i].config, vars));
  return {values.begin(), values.end()};
}

}  // namespace cwi
