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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cwi/independence.hpp"
#include "cwi/rational.hpp"
#include "cwi/table.hpp"
#include "cwi/table_io.hpp"

namespace cwi {

/// A plain variable (`domain` set, `inner` empty) or a nested attribute
/// whose cells are small distributions over `inner`.
struct Attribute {
  std::string name;
  std::vector<std::string> domain;
  std::vector<Attribute> inner;

  bool nested() const { return domain.empty(); }
};

struct NestedTable;

/// A plain value index, or a nested distribution in canonical form.
using Cell = std::variant<std::uint32_t, std::shared_ptr<const NestedTable>>;

struct NestedRow {
  std::vector<Cell> cells;
  Rational p;
};

struct NestedTable {
  std::vector<Attribute> attributes;
  std::vector<NestedRow> rows;

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool flat() const;
};

/// Total order used for grouping and canonical sorting; nested cells compare
/// by content.
int compare(const Cell& a, const Cell& b);
int compare(const NestedTable& a, const NestedTable& b);

/// Same attributes in the same order and the same row sequence.
bool identical(const NestedTable& a, const NestedTable& b);

/// Attributes sorted by name and rows sorted, recursively.
NestedTable canonical_form(const NestedTable& t);

/// Equal up to attribute order and row order, at every nesting level.
bool canonical_equal(const NestedTable& a, const NestedTable& b);

NestedTable from_table(const Table& joint);
/// Throws Error(kInvalidArgument) when a nested attribute remains.
Table to_table(const NestedTable& t);

/// Groups rows by their remaining attributes (first-appearance order) and
/// replaces the attributes `y` by one nested attribute `b`, placed where the
/// first of them stood. Each nested cell is normalized by its group mass;
/// the outer probability is the group mass.
NestedTable nest(const NestedTable& t, const std::string& b, const std::vector<std::string>& y);

/// Expands every row of nested attribute `b` into one row per inner tuple
/// with probability outer × inner. Rows that coincide afterwards merge.
NestedTable unnest(const NestedTable& t, const std::string& b);

struct NestCommuteResult {
  bool commutes = false;
  NestedTable x_then_z;  // nest X as B1, then Z as B2
  NestedTable z_then_x;  // nest Z as B2, then X as B1
};

/// Nests X and Z in both orders and compares the results canonically.
NestCommuteResult nest_commutes(const Table& joint, VarSet x, VarSet z);

struct WiNestReport {
  Verdict wi;
  NestCommuteResult nest;
  bool agree = false;
};

/// WI(X ⊥ Z | Y) against nest commutation; the two must agree.
WiNestReport wi_nest_equivalence(const Table& joint, VarSet x, VarSet z, VarSet y);

/// Joint table P(t, g) = P(t | g) / n for a conditional or raw table, with n
/// the number of given configurations that carry a positive row. Joint
/// tables are returned unchanged.
Table uniform_prior_extension(const Table& t);

/// NestedTable JSON:
///   {"attributes":[{"name":..,"domain":[..]} | {"name":..,"nested":[attribute..]}..],
///    "rows":[{"cells":[value | [{"cells":[..],"P(Y)":"n/d"}..]..], "p":"n/d"}..]}
/// Loading requires every nested cell to sum to 1 (Error(kNormalization)).
NestedTable load_nested(std::string_view text);
/// A nested document, or any table document accepted by load_table in
/// strict mode (which must then be joint).
NestedTable load_nested_or_table(std::string_view text, TableFormat format);
/// Rows sorted, so equal tables serialize to the same bytes.
std::string serialize_nested(const NestedTable& t);

}  // namespace cwi
