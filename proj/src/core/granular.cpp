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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cwi/error.hpp"
#include "json_util.hpp"

namespace cwi {
namespace {

using Cells = std::vector<Cell>;

template <typename T>
int three_way(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int compare_attr(const Attribute& a, const Attribute& b) {
  if (int c = three_way(a.name, b.name)) return c;
  if (int c = three_way(a.domain, b.domain)) return c;
  if (int c = three_way(a.inner.size(), b.inner.size())) return c;
  for (std::size_t i = 0; i < a.inner.size(); ++i) {
    if (int c = compare_attr(a.inner[i], b.inner[i])) return c;
  }
  return 0;
}

int compare_cells(const Cells& a, const Cells& b) {
  if (int c = three_way(a.size(), b.size())) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = compare(a[i], b[i])) return c;
  }
  return 0;
}

struct CellsLess {
  bool operator()(const Cells& a, const Cells& b) const { return compare_cells(a, b) < 0; }
};

int compare_rows(const NestedRow& a, const NestedRow& b) {
  if (int c = compare_cells(a.cells, b.cells)) return c;
  return three_way(a.p, b.p);
}

void sort_rows(std::vector<NestedRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const NestedRow& a, const NestedRow& b) { return compare_rows(a, b) < 0; });
}

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::kInvalidArgument, msg); }

Attribute canonical_attr(const Attribute& a) {
  Attribute out{a.name, a.domain, {}};
  std::sort(out.domain.begin(), out.domain.end());
  for (const auto& in : a.inner) out.inner.push_back(canonical_attr(in));
  std::sort(out.inner.begin(), out.inner.end(),
            [](const Attribute& x, const Attribute& y) { return x.name < y.name; });
  return out;
}

// Sums rows with equal cells, keeping first-appearance order.
std::vector<NestedRow> merge_rows(std::vector<NestedRow> rows) {
  std::map<Cells, std::size_t, CellsLess> seen;
  std::vector<NestedRow> out;
  for (auto& r : rows) {
    const auto [it, fresh] = seen.emplace(r.cells, out.size());
    if (fresh) {
      out.push_back(std::move(r));
    } else {
      out[it->second].p += r.p;
    }
  }
  return out;
}

std::string fresh_name(const NestedTable& t, std::string base) {
  while (t.index_of(base)) base += "'";
  return base;
}

}  // namespace

std::optional<std::size_t> NestedTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == name) return i;
  }
  return std::nullopt;
}

bool NestedTable::flat() const {
  return std::none_of(attributes.begin(), attributes.end(), [](const Attribute& a) { return a.nested(); });
}

int compare(const Cell& a, const Cell& b) {
  if (int c = three_way(a.index(), b.index())) return c;
  if (a.index() == 0) return three_way(std::get<0>(a), std::get<0>(b));
  return compare(*std::get<1>(a), *std::get<1>(b));
}

int compare(const NestedTable& a, const NestedTable& b) {
  if (int c = three_way(a.attributes.size(), b.attributes.size())) return c;
  for (std::size_t i = 0; i < a.attributes.size(); ++i) {
    if (int c = compare_attr(a.attributes[i], b.attributes[i])) return c;
  }
  if (int c = three_way(a.rows.size(), b.rows.size())) return c;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (int c = compare_rows(a.rows[i], b.rows[i])) return c;
  }
  return 0;
}

bool identical(const NestedTable& a, const NestedTable& b) { return compare(a, b) == 0; }

NestedTable canonical_form(const NestedTable& t) {
  std::vector<std::size_t> order(t.attributes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return t.attributes[i].name < t.attributes[j].name; });
  NestedTable out;
  // Domains are sorted too, so value indices are remapped.
  std::vector<std::vector<std::uint32_t>> remap(t.attributes.size());
  for (auto i : order) {
    out.attributes.push_back(canonical_attr(t.attributes[i]));
    const auto& from = t.attributes[i].domain;
    const auto& to = out.attributes.back().domain;
    for (const auto& v : from) {
      remap[i].push_back(static_cast<std::uint32_t>(std::lower_bound(to.begin(), to.end(), v) - to.begin()));
    }
  }
  for (const auto& r : t.rows) {
    NestedRow row;
    row.p = r.p;
    for (auto i : order) {
      const Cell& c = r.cells[i];
      if (c.index() == 0) {
        row.cells.push_back(remap[i][std::get<0>(c)]);
      } else {
        row.cells.push_back(std::make_shared<const NestedTable>(canonical_form(*std::get<1>(c))));
      }
    }
    out.rows.push_back(std::move(row));
  }
  sort_rows(out.rows);
  return out;
}

bool canonical_equal(const NestedTable& a, const NestedTable& b) {
  return identical(canonical_form(a), canonical_form(b));
}

NestedTable from_table(const Table& joint) {
  if (joint.kind() != TableKind::kJoint) bad("nesting needs a joint table");
  NestedTable out;
  for (const auto& v : joint.schema().variables()) out.attributes.push_back({v.name, v.domain, {}});
  for (const auto& r : joint.rows()) {
    NestedRow row{Cells(r.config.begin(), r.config.end()), r.p};
    out.rows.push_back(std::move(row));
  }
  return out;
}

Table to_table(const NestedTable& t) {
  std::vector<Variable> vars;
  for (const auto& a : t.attributes) {
    if (a.nested()) bad("attribute '" + a.name + "' is still nested");
    vars.push_back({a.name, a.domain});
  }
  auto schema = std::make_shared<const Schema>(std::move(vars));
  std::vector<Row> rows;
  for (const auto& r : t.rows) {
    Config config;
    for (const auto& c : r.cells) config.push_back(std::get<0>(c));
    rows.push_back({std::move(config), r.p, ""});
  }
  return Table::joint(std::move(schema), std::move(rows));
}

NestedTable nest(const NestedTable& t, const std::string& b, const std::vector<std::string>& y) {
  if (y.empty()) bad("nesting needs at least one attribute");
  if (t.index_of(b)) bad("attribute name '" + b + "' is already taken");
  std::vector<std::size_t> ypos;
  for (const auto& name : y) {
    const auto i = t.index_of(name);
    if (!i) bad("unknown attribute '" + name + "'");
    if (std::find(ypos.begin(), ypos.end(), *i) != ypos.end()) bad("attribute '" + name + "' listed twice");
    ypos.push_back(*i);
  }
  std::sort(ypos.begin(), ypos.end());
  std::vector<bool> in_y(t.attributes.size(), false);
  for (auto i : ypos) in_y[i] = true;

  Attribute nested_attr{b, {}, {}};
  for (auto i : ypos) nested_attr.inner.push_back(t.attributes[i]);
  NestedTable out;
  for (std::size_t i = 0; i < t.attributes.size(); ++i) {
    if (i == ypos.front()) out.attributes.push_back(nested_attr);
    if (!in_y[i]) out.attributes.push_back(t.attributes[i]);
  }

  struct Group {
    Cells rest;
    Rational mass;
    std::vector<NestedRow> inner;
  };
  std::vector<Group> groups;
  std::map<Cells, std::size_t, CellsLess> where;
  for (const auto& r : t.rows) {
    Cells rest;
    Cells inner;
    for (std::size_t i = 0; i < r.cells.size(); ++i) (in_y[i] ? inner : rest).push_back(r.cells[i]);
    const auto [it, fresh] = where.emplace(rest, groups.size());
    if (fresh) groups.push_back({std::move(rest), Rational{}, {}});
    Group& g = groups[it->second];
    g.mass += r.p;
    g.inner.push_back({std::move(inner), r.p});
  }

  for (auto& g : groups) {
    if (g.mass.is_zero()) continue;
    auto inner = std::make_shared<NestedTable>();
    inner->attributes = nested_attr.inner;
    inner->rows = merge_rows(std::move(g.inner));
    for (auto& r : inner->rows) r.p = r.p / g.mass;
    sort_rows(inner->rows);
    NestedRow row;
    row.p = g.mass;
    for (std::size_t k = 0; k <= g.rest.size(); ++k) {
      if (k == ypos.front()) row.cells.emplace_back(std::shared_ptr<const NestedTable>(inner));
      if (k < g.rest.size()) row.cells.push_back(g.rest[k]);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

NestedTable unnest(const NestedTable& t, const std::string& b) {
  const auto pos = t.index_of(b);
  if (!pos) bad("unknown attribute '" + b + "'");
  const Attribute& attr = t.attributes[*pos];
  if (!attr.nested()) bad("attribute '" + b + "' is not nested");

  NestedTable out;
  for (std::size_t i = 0; i < t.attributes.size(); ++i) {
    if (i == *pos) {
      out.attributes.insert(out.attributes.end(), attr.inner.begin(), attr.inner.end());
    } else {
      out.attributes.push_back(t.attributes[i]);
    }
  }
  for (const auto& a : out.attributes) {
    if (std::count_if(out.attributes.begin(), out.attributes.end(),
                      [&](const Attribute& o) { return o.name == a.name; }) > 1) {
      bad("unnesting '" + b + "' would duplicate attribute '" + a.name + "'");
    }
  }
  std::vector<NestedRow> rows;
  for (const auto& r : t.rows) {
    const auto& inner = *std::get<1>(r.cells[*pos]);
    for (const auto& ir : inner.rows) {
      NestedRow row;
      row.cells.insert(row.cells.end(), r.cells.begin(), r.cells.begin() + static_cast<long>(*pos));
      row.cells.insert(row.cells.end(), ir.cells.begin(), ir.cells.end());
      row.cells.insert(row.cells.end(), r.cells.begin() + static_cast<long>(*pos) + 1, r.cells.end());
      row.p = r.p * ir.p;
      rows.push_back(std::move(row));
    }
  }
  out.rows = merge_rows(std::move(rows));
  return out;
}

NestCommuteResult nest_commutes(const Table& joint, VarSet x, VarSet z) {
  if (x.empty() || z.empty()) bad("X and Z must be nonempty");
  if (!x.disjoint(z)) bad("X and Z must be disjoint");
  if (!(x | z).subset_of(joint.schema().all())) bad("variables outside the schema");
  const NestedTable base = from_table(joint);
  const auto xs = joint.schema().names(x);
  const auto zs = joint.schema().names(z);
  const std::string b1 = fresh_name(base, "B1");
  NestedTable probe = base;
  probe.attributes.push_back({b1, {"0"}, {}});
  const std::string b2 = fresh_name(probe, "B2");

  NestCommuteResult r;
  r.x_then_z = nest(nest(base, b1, xs), b2, zs);
  r.z_then_x = nest(nest(base, b2, zs), b1, xs);
  r.commutes = canonical_equal(r.x_then_z, r.z_then_x);
  return r;
}

WiNestReport wi_nest_equivalence(const Table& joint, VarSet x, VarSet z, VarSet y) {
  if (joint.kind() != TableKind::kJoint) bad("nest commutation needs a joint table");
  WiNestReport r;
  r.wi = check_wi(joint, x, z, y);
  r.nest = nest_commutes(joint, x, z);
  r.agree = r.wi.holds == r.nest.commutes;
  return r;
}

Table uniform_prior_extension(const Table& t) {
  if (t.kind() == TableKind::kJoint) return t;
  std::set<std::vector<std::uint32_t>> columns;
  for (const auto& r : t.rows()) columns.insert(project(r.config, t.givens()));
  const Rational n(static_cast<long>(columns.size()));
  std::vector<Row> rows;
  for (const auto& r : t.rows()) rows.push_back({r.config, r.p / n, r.label});
  return Table::joint(t.schema_ptr(), std::move(rows));
}

// --- JSON ---------------------------------------------------------------------

namespace {

using nlohmann::json;
using detail::ordered_json;

const json& member(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::kParse, std::string("missing field '") + key + "'");
  return *it;
}

std::vector<Attribute> attributes_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::kParse, "'attributes' must be a nonempty array");
  std::vector<Attribute> out;
  std::set<std::string> names;
  for (const auto& ja : j) {
    if (!ja.is_object() || !member(ja, "name").is_string()) {
      fail(ErrorCode::kParse, "each attribute needs a string 'name'");
    }
    Attribute a;
    a.name = ja["name"].get<std::string>();
    if (!names.insert(a.name).second) fail(ErrorCode::kSchema, "duplicate attribute '" + a.name + "'");
    if (ja.contains("nested")) {
      a.inner = attributes_from_json(ja["nested"]);
    } else {
      a.domain = detail::string_list(member(ja, "domain"), "domain");
      if (a.domain.empty()) fail(ErrorCode::kSchema, "attribute '" + a.name + "' has an empty domain");
      if (std::set<std::string>(a.domain.begin(), a.domain.end()).size() != a.domain.size()) {
        fail(ErrorCode::kSchema, "attribute '" + a.name + "' repeats a domain value");
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<NestedRow> rows_from_json(const std::vector<Attribute>& attrs, const json& j, const char* pkey);

Cell cell_from_json(const Attribute& a, const json& j) {
  if (!a.nested()) {
    std::string v;
    if (j.is_string()) {
      v = j.get<std::string>();
    } else if (j.is_number()) {
      v = j.dump();
    } else {
      fail(ErrorCode::kParse, "cell of '" + a.name + "' must be a value");
    }
    const auto it = std::find(a.domain.begin(), a.domain.end(), v);
    if (it == a.domain.end()) fail(ErrorCode::kSchema, "value '" + v + "' is outside the domain of '" + a.name + "'");
    return static_cast<std::uint32_t>(it - a.domain.begin());
  }
  auto inner = std::make_shared<NestedTable>();
  inner->attributes = a.inner;
  inner->rows = rows_from_json(a.inner, j, "P(Y)");
  Rational sum;
  for (const auto& r : inner->rows) sum += r.p;
  if (sum != Rational(1)) {
    fail(ErrorCode::kNormalization, "nested cell of '" + a.name + "' sums to " + sum.str() + ", not 1");
  }
  sort_rows(inner->rows);
  return std::shared_ptr<const NestedTable>(inner);
}

std::vector<NestedRow> rows_from_json(const std::vector<Attribute>& attrs, const json& j, const char* pkey) {
  if (!j.is_array()) fail(ErrorCode::kParse, "rows must be an array");
  std::vector<NestedRow> out;
  std::set<Cells, CellsLess> seen;
  for (const auto& jr : j) {
    if (!jr.is_object()) fail(ErrorCode::kParse, "each row must be an object");
    const auto& jc = member(jr, "cells");
    if (!jc.is_array() || jc.size() != attrs.size()) {
      fail(ErrorCode::kSchema, "row has the wrong number of cells");
    }
    NestedRow row;
    for (std::size_t i = 0; i < attrs.size(); ++i) row.cells.push_back(cell_from_json(attrs[i], jc[i]));
    row.p = detail::rational_from_json(member(jr, pkey), pkey);
    if (row.p.sign() < 0) fail(ErrorCode::kSchema, "negative probability");
    if (!seen.insert(row.cells).second) fail(ErrorCode::kSchema, "duplicate row");
    if (!row.p.is_zero()) out.push_back(std::move(row));
  }
  return out;
}

ordered_json attributes_json(const std::vector<Attribute>& attrs) {
  ordered_json out = ordered_json::array();
  for (const auto& a : attrs) {
    ordered_json ja;
    ja["name"] = a.name;
    if (a.nested()) {
      ja["nested"] = attributes_json(a.inner);
    } else {
      ja["domain"] = a.domain;
    }
    out.push_back(std::move(ja));
  }
  return out;
}

ordered_json rows_json(const NestedTable& t, const char* pkey);

ordered_json cell_json(const Attribute& a, const Cell& c) {
  if (c.index() == 0) return a.domain[std::get<0>(c)];
  return rows_json(*std::get<1>(c), "P(Y)");
}

ordered_json rows_json(const NestedTable& t, const char* pkey) {
  std::vector<const NestedRow*> rows;
  for (const auto& r : t.rows) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](const NestedRow* a, const NestedRow* b) { return compare_rows(*a, *b) < 0; });
  ordered_json out = ordered_json::array();
  for (const auto* r : rows) {
    ordered_json jr;
    ordered_json cells = ordered_json::array();
    for (std::size_t i = 0; i < t.attributes.size(); ++i) cells.push_back(cell_json(t.attributes[i], r->cells[i]));
    jr["cells"] = std::move(cells);
    jr[pkey] = r->p.str();
    out.push_back(std::move(jr));
  }
  return out;
}

}  // namespace

NestedTable load_nested(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) fail(ErrorCode::kParse, "nested table document must be a JSON object");
  NestedTable t;
  t.attributes = attributes_from_json(member(doc, "attributes"));
  t.rows = rows_from_json(t.attributes, member(doc, "rows"), "p");
  return t;
}

NestedTable load_nested_or_table(std::string_view text, TableFormat format) {
  if (format == TableFormat::kJson) {
    const json doc = detail::parse_json(text);
    if (doc.is_object() && doc.contains("attributes")) return load_nested(text);
  }
  return from_table(load_table(text, format));
}

namespace detail {

ordered_json nested_table_json(const NestedTable& t) {
  ordered_json doc;
  doc["attributes"] = attributes_json(t.attributes);
  doc["rows"] = rows_json(t, "p");
  return doc;
}

}  // namespace detail

std::string serialize_nested(const NestedTable& t) { return detail::nested_table_json(t).dump(2) + "\n"; }

}  // namespace cwi
