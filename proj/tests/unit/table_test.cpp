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

#include "cwi/table.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <memory>
#include <optional>
#include <random>

#include "cwi/error.hpp"
#include "cwi/partitions.hpp"
#include "cwi/table_io.hpp"
#include "errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using cwi::ErrorCode;
using cwi::PartialConfig;
using cwi::Rational;
using cwi::Table;

std::shared_ptr<const cwi::Schema> binary(std::vector<std::string> names) {
  std::vector<cwi::Variable> vs;
  for (auto& n : names) vs.push_back({n, {"0", "1"}});
  return std::make_shared<const cwi::Schema>(vs);
}

TEST(Schema, RejectsDuplicatesAndEmptyDomains) {
  EXPECT_EQ(code_of([] { cwi::Schema(std::vector<cwi::Variable>{{"A", {"0"}}, {"A", {"1"}}}); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { cwi::Schema(std::vector<cwi::Variable>{{"A", {}}}); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { cwi::Schema(std::vector<cwi::Variable>{{"A", {"0", "0"}}}); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { binary({"A"})->require("B"); }), ErrorCode::kSchema);
}

TEST(Table, DropsZeroRowsAndLabelsTheRest) {
  const auto s = binary({"A"});
  const Table t = Table::joint(s, {{{0}, Rational(0), ""}, {{1}, Rational(1), ""}});
  ASSERT_EQ(t.rows().size(), 1U);
  EXPECT_EQ(t.rows()[0].label, "t1");
  EXPECT_EQ(t.value({0}), Rational(0));
}

TEST(Table, RejectsDuplicatesNegativesAndBadConfigs) {
  const auto s = binary({"A"});
  EXPECT_EQ(code_of([&] { Table::joint(s, {{{0}, Rational(1, 2), ""}, {{0}, Rational(1, 2), ""}}); }),
            ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { Table::joint(s, {{{0}, Rational(-1), ""}}); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { Table::joint(s, {{{2}, Rational(1), ""}}); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { Table::joint(s, {{{0, 0}, Rational(1), ""}}); }), ErrorCode::kSchema);
}

TEST(Table, ConditionalKindsNeedATargetGivenPartition) {
  const auto s = binary({"A", "B"});
  EXPECT_EQ(code_of([&] {
              Table::make(s, cwi::TableKind::kConditional, cwi::VarSet::single(0), cwi::VarSet{}, {});
            }),
            ErrorCode::kSchema);
  EXPECT_NO_THROW(Table::make(s, cwi::TableKind::kRaw, cwi::VarSet::single(0), cwi::VarSet::single(1), {}));
}

TEST(Validate, ContextStrongAsConditionalHasTwoBadColumns) {
  auto text = fixtures::read("context_strong.json");
  text.replace(text.find("\"raw\""), 5, "\"conditional\"");
  EXPECT_EQ(code_of([&] { cwi::load_table(text, cwi::TableFormat::kJson); }), ErrorCode::kNormalization);

  const Table t = cwi::load_table(text, cwi::TableFormat::kJson, cwi::LoadMode::kLenient);
  const auto issues = cwi::validate(t, cwi::ValidationMode::kStrict);
  ASSERT_EQ(issues.size(), 2U);
  const auto& s = t.schema();
  EXPECT_EQ(cwi::describe(s, *issues[0].at), "(Y=1, Z=0, W=0)");
  EXPECT_EQ(cwi::describe(s, *issues[1].at), "(Y=1, Z=0, W=1)");
  EXPECT_NE(issues[0].message.find("4/5"), std::string::npos);
  EXPECT_TRUE(cwi::validate(t, cwi::ValidationMode::kRaw).empty());
}

TEST(Validate, ContextWeakLoadsAsRaw) {
  const Table t = fixtures::load("context_weak.json");
  EXPECT_EQ(t.kind(), cwi::TableKind::kRaw);
  EXPECT_EQ(t.rows().size(), 15U);
}

TEST(Validate, UnnormalizedJointIsRejected) {
  const auto s = binary({"A"});
  const Table t = Table::joint(s, {{{0}, Rational(1, 2), ""}});
  EXPECT_EQ(cwi::validate(t, cwi::ValidationMode::kStrict).size(), 1U);
}

TEST(ConditionalValue, ReadsRawEntriesDirectly) {
  const Table t = fixtures::load("weak_classes.json");
  const auto& s = t.schema();
  const auto x = PartialConfig::parse(s, {{"X", "3"}});
  const auto g = PartialConfig::parse(s, {{"Y", "1"}, {"Z", "1"}, {"W", "1"}});
  EXPECT_EQ(cwi::cond_value(t, x, g), Rational(7, 10));
  const auto absent = PartialConfig::parse(s, {{"Y", "1"}, {"Z", "0"}, {"W", "1"}});
  EXPECT_FALSE(cwi::cond_value(t, x, absent).has_value());
}

TEST(ConditionalValue, DerivesRatiosForJointTables) {
  const Table t = fixtures::load("nest_order.json");
  const auto& s = t.schema();
  const auto a3 = PartialConfig::parse(s, {{"A3", "0"}});
  const auto a1 = PartialConfig::parse(s, {{"A1", "1"}});
  EXPECT_EQ(cwi::cond_value(t, a3, a1), Rational(2, 3));
}

TEST(Marginal, CoarsenOntoA1) {
  const Table t = fixtures::load("coarsen.json");
  const Table m = cwi::marginal(t, cwi::VarSet::single(0));
  ASSERT_EQ(m.rows().size(), 3U);
  EXPECT_EQ(m.rows()[0].p, Rational(1, 2));
  EXPECT_EQ(m.rows()[1].p, Rational(1, 4));
  EXPECT_EQ(m.rows()[2].p, Rational(1, 4));
}

TEST(PartialConfig, UnknownValuesMatchNothing) {
  const Table t = fixtures::load("context_strong.json");
  const auto c = PartialConfig::parse(t.schema(), {{"Y", "2"}});
  EXPECT_EQ(c.values[0], PartialConfig::kNoValue);
  EXPECT_TRUE(cwi::restrict_context(cwi::support(t), c).empty());
}

TEST(TableIo, CsvAndJsonAgreeOnCoarsen) {
  const Table j = fixtures::load("coarsen.json");
  const Table c = fixtures::load("coarsen.csv");
  ASSERT_EQ(j.rows().size(), c.rows().size());
  for (std::size_t i = 0; i < j.rows().size(); ++i) {
    for (std::size_t v = 0; v < 3; ++v) {
      EXPECT_EQ(j.schema()[v].domain[j.rows()[i].config[v]], c.schema()[v].domain[c.rows()[i].config[v]]);
    }
    EXPECT_EQ(j.rows()[i].p, c.rows()[i].p);
  }
}

TEST(TableIo, ParseErrorsCarryCodes) {
  EXPECT_EQ(code_of([] { cwi::load_table("{", cwi::TableFormat::kJson); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { cwi::load_table("[]", cwi::TableFormat::kJson); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { cwi::load_table("A,B\n0,1\n", cwi::TableFormat::kCsv); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] {
              cwi::load_table(R"({"variables":[{"name":"A","domain":["0"]}],"rows":[{"config":["1"],"p":1}]})",
                              cwi::TableFormat::kJson);
            }),
            ErrorCode::kSchema);
}

TEST(TableIo, NumbersReadAsShortestDecimal) {
  const Table t = cwi::load_table(
      R"({"variables":[{"name":"A","domain":["0","1"]}],"rows":[{"config":["0"],"p":0.1},{"config":["1"],"p":0.9}]})",
      cwi::TableFormat::kJson);
  EXPECT_EQ(t.rows()[0].p, Rational(1, 10));
}

TEST(TableIo, RoundTripsEveryFixture) {
  for (const char* name : fixtures::kAll) {
    const Table t = fixtures::load(name);
    EXPECT_EQ(cwi::load_table(cwi::serialize_table(t), cwi::TableFormat::kJson), t) << name;
  }
}

TEST(TableIo, RoundTripsRandomTables) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Table t = oracle::random_table(rng, {1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 3});
    EXPECT_EQ(cwi::load_table(cwi::serialize_table(t), cwi::TableFormat::kJson), t);
  }
}

TEST(TableIo, DigestTracksContent) {
  const Table a = fixtures::load("coarsen.json");
  const Table b = fixtures::load("nest_order.json");
  EXPECT_EQ(cwi::table_digest(a), cwi::table_digest(fixtures::load("coarsen.json")));
  EXPECT_NE(cwi::table_digest(a), cwi::table_digest(b));
  EXPECT_EQ(cwi::table_digest(a).rfind("sha256:", 0), 0U);
}

}  // namespace
