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

#include <gtest/gtest.h>

#include <random>

#include "errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using cwi::BinaryRelation;
using cwi::Partition;

oracle::Rel matrix(const BinaryRelation& r) {
  oracle::Rel m(r.universe_size(), std::vector<bool>(r.universe_size(), false));
  for (std::size_t i = 0; i < r.universe_size(); ++i) {
    for (std::size_t k = 0; k < r.universe_size(); ++k) m[i][k] = r.contains(i, k);
  }
  return m;
}

oracle::Rel matrix(const Partition& p) { return matrix(BinaryRelation::of(p)); }

Partition random_partition(std::mt19937_64& rng, std::size_t n) {
  const std::size_t k = 1 + rng() % n;
  std::vector<std::size_t> ids(n);
  for (auto& id : ids) id = rng() % k;
  return Partition::from_block_ids(ids);
}

TEST(Partition, CanonicalOrder) {
  const auto p = Partition::from_block_ids({5, 2, 5, 9});
  ASSERT_EQ(p.block_count(), 3U);
  EXPECT_EQ(p.block(0), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(p.block(1), (std::vector<std::size_t>{1}));
  EXPECT_EQ(p, Partition::from_blocks(4, {{3}, {2, 0}, {1}}));
}

TEST(Partition, FromBlocksValidates) {
  EXPECT_EQ(code_of([] { Partition::from_blocks(3, {{0, 1}}); }), cwi::ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { Partition::from_blocks(2, {{0, 1}, {1}}); }), cwi::ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { Partition::from_blocks(2, {{0, 1}, {}}); }), cwi::ErrorCode::kInvalidArgument);
}

TEST(Compose, ThreeElementChainDoesNotCommute) {
  // a,b,c = 0,1,2. p∘q reaches {a,b,c} from a and b but only {b,c} from c.
  const auto p = Partition::from_blocks(3, {{0, 1}, {2}});
  const auto q = Partition::from_blocks(3, {{0}, {1, 2}});
  const auto pq = cwi::compose(p, q);
  EXPECT_TRUE(pq.contains(0, 2));
  EXPECT_FALSE(pq.contains(2, 0));
  const auto r = cwi::commutes(p, q);
  EXPECT_FALSE(r.commutes);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NE(pq.contains(r.witness->first, r.witness->second),
            cwi::compose(q, p).contains(r.witness->first, r.witness->second));
  EXPECT_EQ(cwi::join(p, q).block_count(), 1U);
}

TEST(Compose, NestedPartitionsCommute) {
  const auto fine = Partition::from_blocks(4, {{0}, {1}, {2, 3}});
  const auto coarse = Partition::from_blocks(4, {{0, 1}, {2, 3}});
  const auto r = cwi::commutes(fine, coarse);
  EXPECT_TRUE(r.commutes);
  EXPECT_EQ(*r.partition, coarse);
  EXPECT_TRUE(fine.refines(coarse));
  EXPECT_FALSE(coarse.refines(fine));
}

TEST(Compose, AgreesWithBruteForceOnRandomPartitions) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + rng() % 9;
    const auto p = random_partition(rng, n);
    const auto q = random_partition(rng, n);
    const auto pq = oracle::compose(matrix(p), matrix(q));
    const auto qp = oracle::compose(matrix(q), matrix(p));
    EXPECT_EQ(matrix(cwi::compose(p, q)), pq);

    const auto j = oracle::join(matrix(p), matrix(q));
    EXPECT_EQ(matrix(cwi::join(p, q)), j);
    EXPECT_TRUE(BinaryRelation::of(cwi::join(p, q)).is_equivalence());

    const auto r = cwi::commutes(p, q);
    EXPECT_EQ(r.commutes, pq == qp);
    EXPECT_EQ(r.commutes, cwi::commutes(q, p).commutes);
    if (r.commutes) {
      EXPECT_EQ(matrix(*r.partition), j);
    } else {
      ASSERT_TRUE(r.witness.has_value());
      const auto [i, k] = *r.witness;
      EXPECT_EQ(pq[i][k], r.witness_in_pq);
      EXPECT_NE(pq[i][k], qp[i][k]);
    }
  }
}

TEST(Theta, GroupsAgreeingRows) {
  const auto t = fixtures::load("weak_classes.json");
  const auto s = cwi::support(t);
  const auto& schema = t.schema();
  const auto xy = cwi::theta(s, schema.varset({"X", "Y"}));
  EXPECT_EQ(xy.block_count(), 8U);
  for (const auto& b : xy.blocks()) EXPECT_EQ(b.size(), 4U);
  const auto yzw = cwi::theta(s, schema.varset({"Y", "Z", "W"}));
  EXPECT_EQ(yzw.block_count(), 16U);
  EXPECT_EQ(yzw.block(0), (std::vector<std::size_t>{0, 4}));
}

TEST(Support, ContextRestrictionKeepsLabels) {
  const auto t = fixtures::load("context_weak.json");
  const auto s = cwi::restrict_context(cwi::support(t), cwi::PartialConfig::parse(t.schema(), {{"Y", "1"}}));
  ASSERT_EQ(s.size(), 3U);
  EXPECT_EQ(s[0].label, "t13");
  EXPECT_EQ(s[2].label, "t15");
}

TEST(ProjectedDomain, SortedDistinctValues) {
  const auto t = fixtures::load("context_weak.json");
  const auto s = cwi::support(t);
  const auto zw = t.schema().varset({"Z", "W"});
  const auto d = cwi::projected_domain({0, 1, 2, 3, 4, 5, 6, 7}, s, zw);
  EXPECT_EQ(d, (std::vector<std::vector<std::uint32_t>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

}  // namespace
