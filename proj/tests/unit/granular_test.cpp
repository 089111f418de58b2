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

#include "cwi/granular.hpp"

#include <gtest/gtest.h>

#include <random>

#include "errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using cwi::NestedTable;
using cwi::Rational;

// "v v:p, v v:p" for a flat inner table; values spelled from the domains.
std::string render(const NestedTable& t);

std::string render_cell(const cwi::Attribute& a, const cwi::Cell& c) {
  if (const auto* v = std::get_if<std::uint32_t>(&c)) return a.domain[*v];
  return "{" + render(*std::get<std::shared_ptr<const NestedTable>>(c)) + "}";
}

std::string render(const NestedTable& t) {
  std::string out;
  for (const auto& r : t.rows) {
    if (!out.empty()) out += ", ";
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      if (i > 0) out += ' ';
      out += render_cell(t.attributes[i], r.cells[i]);
    }
    out += ":" + r.p.str();
  }
  return out;
}

NestedTable load(const std::string& name) { return cwi::from_table(fixtures::load(name)); }

TEST(Nest, CoarsensTwoAttributes) {
  const auto n = cwi::nest(load("coarsen.json"), "B", {"A2", "A3"});
  ASSERT_EQ(n.attributes.size(), 2U);
  EXPECT_EQ(n.attributes[0].name, "A1");
  EXPECT_EQ(n.attributes[1].name, "B");
  EXPECT_TRUE(n.attributes[1].nested());
  EXPECT_EQ(render(n),
            "1 {1 2:1/4, 3 4:1/2, 5 6:1/4}:1/2, 2 {1 3:1/2, 2 4:1/2}:1/4, 3 {0 0:1/2, 0 1:1/2}:1/4");
  EXPECT_FALSE(n.flat());
}

TEST(Unnest, RestoresTheJoint) {
  const auto original = load("coarsen.json");
  const auto back = cwi::unnest(cwi::nest(original, "B", {"A2", "A3"}), "B");
  EXPECT_TRUE(back.flat());
  EXPECT_TRUE(cwi::canonical_equal(back, original));
  EXPECT_EQ(cwi::to_table(back).total_mass(), Rational(1));
}

TEST(Nest, EverythingIntoOneAttribute) {
  const auto n = cwi::nest(load("nest_order.json"), "B", {"A1", "A2", "A3"});
  ASSERT_EQ(n.rows.size(), 1U);
  EXPECT_EQ(n.rows[0].p, Rational(1));
  EXPECT_EQ(render(n), "{0 0 0:2/5, 1 0 0:2/5, 1 0 1:1/5}:1");
}

TEST(Nest, OrderMattersWithoutWeakIndependence) {
  const auto p = load("nest_order.json");
  const auto z_first = cwi::nest(cwi::nest(p, "B3", {"A3"}), "B1", {"A1"});
  EXPECT_EQ(render(z_first), "{0:1} 0 {0:1}:2/5, {1:1} 0 {0:2/3, 1:1/3}:3/5");
  const auto x_first = cwi::nest(cwi::nest(p, "B1", {"A1"}), "B3", {"A3"});
  EXPECT_EQ(render(x_first), "{0:1/2, 1:1/2} 0 {0:1}:4/5, {1:1} 0 {1:1}:1/5");
  EXPECT_FALSE(cwi::canonical_equal(z_first, x_first));

  const auto r = cwi::nest_commutes(fixtures::load("nest_order.json"), fixtures::load("nest_order.json").schema().varset({"A1"}),
                                    fixtures::load("nest_order.json").schema().varset({"A3"}));
  EXPECT_FALSE(r.commutes);
}

TEST(Unnest, Commutes) {
  const auto p = load("nest_order.json");
  const auto n = cwi::nest(cwi::nest(p, "B3", {"A3"}), "B1", {"A1"});
  const auto a = cwi::unnest(cwi::unnest(n, "B1"), "B3");
  const auto b = cwi::unnest(cwi::unnest(n, "B3"), "B1");
  EXPECT_TRUE(cwi::canonical_equal(a, b));
  EXPECT_TRUE(cwi::canonical_equal(a, p));
}

TEST(Nest, ClassesCollapseUnderWeakIndependence) {
  const auto raw = fixtures::load("weak_classes.json");
  const auto joint = cwi::uniform_prior_extension(raw);
  EXPECT_EQ(joint.total_mass(), Rational(1));
  const auto& s = joint.schema();
  const auto report = cwi::wi_nest_equivalence(joint, s.varset({"X"}), s.varset({"Z", "W"}), s.varset({"Y"}));
  EXPECT_TRUE(report.wi.holds);
  EXPECT_TRUE(report.nest.commutes);
  EXPECT_TRUE(report.agree);
  const auto& n = report.nest.x_then_z;
  ASSERT_EQ(n.rows.size(), 4U);
  const auto b1 = *n.index_of("B1");
  const auto b2 = *n.index_of("B2");
  for (const auto& r : n.rows) {
    EXPECT_EQ(r.p, Rational(1, 4));
    EXPECT_EQ(std::get<std::shared_ptr<const NestedTable>>(r.cells[b1])->rows.size(), 2U);
    EXPECT_EQ(std::get<std::shared_ptr<const NestedTable>>(r.cells[b2])->rows.size(), 4U);
  }
}

TEST(Nest, CommutationMatchesWeakIndependence) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<std::size_t> sizes;
    const std::size_t n = 2 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) sizes.push_back(1 + rng() % 3);
    const auto t = oracle::random_table(rng, sizes);
    for (const auto& [x, z, y] : oracle::triples(n)) {
      const auto r = cwi::wi_nest_equivalence(t, x, z, y);
      ASSERT_TRUE(r.agree);
      ASSERT_EQ(r.nest.commutes, oracle::nest_orders_agree(t, x, z));
      ASSERT_EQ(r.wi.holds, oracle::wi(t, x, z, y));
    }
  }
}

TEST(Nest, Errors) {
  const auto p = load("nest_order.json");
  using cwi::ErrorCode;
  EXPECT_EQ(code_of([&] { cwi::nest(p, "B", {}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { cwi::nest(p, "A2", {"A1"}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { cwi::nest(p, "B", {"Q"}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { cwi::nest(p, "B", {"A1", "A1"}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { cwi::unnest(p, "A1"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { cwi::to_table(cwi::nest(p, "B", {"A1"})); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { cwi::from_table(fixtures::load("context_strong.json")); }), ErrorCode::kInvalidArgument);
}

TEST(Canonical, AttributeAndRowOrderDoNotMatter) {
  const auto p = load("coarsen.json");
  const auto alt = cwi::unnest(cwi::nest(p, "B", {"A1"}), "B");
  EXPECT_EQ(alt.attributes.back().name, "A3");
  EXPECT_TRUE(cwi::canonical_equal(alt, p));
  EXPECT_TRUE(cwi::identical(cwi::canonical_form(alt), cwi::canonical_form(p)));
  EXPECT_FALSE(cwi::canonical_equal(p, load("nest_order.json")));
}

TEST(Json, RoundTrip) {
  const auto n = cwi::nest(cwi::nest(load("nest_order.json"), "B3", {"A3"}), "B1", {"A1"});
  const auto text = cwi::serialize_nested(n);
  const auto back = cwi::load_nested(text);
  EXPECT_TRUE(cwi::canonical_equal(back, n));
  EXPECT_EQ(cwi::serialize_nested(back), text);
  const auto via = cwi::load_nested_or_table(text, cwi::TableFormat::kJson);
  EXPECT_TRUE(cwi::canonical_equal(via, n));
  const auto flat = cwi::load_nested_or_table(fixtures::read("coarsen.csv"), cwi::TableFormat::kCsv);
  EXPECT_TRUE(cwi::canonical_equal(flat, load("coarsen.json")));
}

TEST(Json, RejectsBadDocuments) {
  using cwi::ErrorCode;
  const std::string head = R"j({"attributes":[{"name":"A","domain":["0","1"]},{"name":"B","nested":[{"name":"C","domain":["0","1"]}]}],"rows":)j";
  EXPECT_EQ(code_of([&] { cwi::load_nested(head + R"j([{"cells":["0",[{"cells":["0"],"P(Y)":"1/2"}]],"p":"1"}]})j"); }),
            ErrorCode::kNormalization);
  EXPECT_EQ(code_of([&] {
              cwi::load_nested(head + R"j([{"cells":["0",[{"cells":["0"],"P(Y)":"1"}]],"p":"1/2"},)j"
                                      R"j({"cells":["0",[{"cells":["0"],"P(Y)":"1"}]],"p":"1/2"}]})j");
            }),
            ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { cwi::load_nested(head + R"j([{"cells":["2",[{"cells":["0"],"P(Y)":"1"}]],"p":"1"}]})j"); }),
            ErrorCode::kSchema);
  EXPECT_EQ(code_of([&] { cwi::load_nested("[1,2]"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { cwi::load_nested("{"); }), ErrorCode::kParse);
  const auto ok = cwi::load_nested(head + R"j([{"cells":["1",[{"cells":["1"],"P(Y)":"1"}]],"p":"1"},)j"
                                          R"j({"cells":["0",[{"cells":["1"],"P(Y)":"1"}]],"p":"0"}]})j");
  EXPECT_EQ(ok.rows.size(), 1U);
}

}  // namespace
