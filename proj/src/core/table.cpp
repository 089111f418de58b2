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

#include <set>
#include <unordered_set>

#include "cwi/error.hpp"

namespace cwi {

std::optional<std::uint32_t> Variable::value_index(std::string_view value) const {
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] == value) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

Schema::Schema(std::vector<Variable> variables) : variables_(std::move(variables)) {
  if (variables_.size() > VarSet::kMaxVariables) {
    fail(ErrorCode::kSchema, "at most 64 variables are supported");
  }
  std::unordered_set<std::string> names;
  for (const auto& v : variables_) {
    if (v.name.empty()) fail(ErrorCode::kSchema, "variable with empty name");
    if (!names.insert(v.name).second) fail(ErrorCode::kSchema, "duplicate variable '" + v.name + "'");
    if (v.domain.empty()) fail(ErrorCode::kSchema, "variable '" + v.name + "' has an empty domain");
    std::unordered_set<std::string> values;
    for (const auto& d : v.domain) {
      if (!values.insert(d).second) {
        fail(ErrorCode::kSchema, "duplicate value '" + d + "' in domain of '" + v.name + "'");
      }
    }
  }
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Schema::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  fail(ErrorCode::kSchema, "unknown variable '" + std::string(name) + "'");
}

VarSet Schema::varset(const std::vector<std::string>& names) const {
  VarSet out;
  for (const auto& n : names) out.insert(require(n));
  return out;
}

std::vector<std::string> Schema::names(VarSet vars) const {
  std::vector<std::string> out;
  for (auto i : vars.indices()) out.push_back(variables_.at(i).name);
  return out;
}

std::uint64_t Schema::domain_product(VarSet vars) const {
  std::uint64_t n = 1;
  for (auto i : vars.indices()) {
    const std::uint64_t d = variables_.at(i).domain.size();
    if (n > UINT64_MAX / d) return UINT64_MAX;
    n *= d;
  }
  return n;
}

std::vector<std::uint32_t> project(const Config& config, VarSet vars) {
  std::vector<std::uint32_t> out;
  out.reserve(vars.size());
  for (auto i : vars.indices()) out.push_back(config[i]);
  return out;
}

PartialConfig PartialConfig::parse(const Schema& schema,
                                   const std::vector<std::pair<std::string, std::string>>& items) {
  std::map<std::size_t, std::uint32_t> by_var;
  for (const auto& [name, value] : items) {
    const std::size_t v = schema.require(name);
    const auto idx = schema[v].value_index(value);
    if (!by_var.emplace(v, idx.value_or(kNoValue)).second) {
      fail(ErrorCode::kInvalidArgument, "variable '" + name + "' assigned twice");
    }
  }
  PartialConfig out;
  for (const auto& [v, idx] : by_var) {
    out.vars.insert(v);
    out.values.push_back(idx);
  }
  return out;
}

bool PartialConfig::matches(const Config& config) const {
  std::size_t k = 0;
  for (std::uint64_t b = vars.bits(); b != 0; b &= b - 1, ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(b));
    if (config[i] != values[k]) return false;
  }
  return true;
}

std::string describe(const Schema& schema, const PartialConfig& config) {
  std::string out = "(";
  std::size_t k = 0;
  for (auto i : config.vars.indices()) {
    if (k > 0) out += ", ";
    out += schema[i].name + "=";
    const auto v = config.values[k++];
    out += v == PartialConfig::kNoValue ? std::string("?") : schema[i].domain[v];
  }
  return out + ")";
}

std::string_view to_string(TableKind kind) {
  switch (kind) {
    case TableKind::kJoint: return "joint";
    case TableKind::kConditional: return "conditional";
    case TableKind::kRaw: return "raw";
  }
  return "joint";
}

Table Table::make(std::shared_ptr<const Schema> schema, TableKind kind, VarSet targets,
                  VarSet givens, std::vector<Row> rows) {
  if (!schema) fail(ErrorCode::kSchema, "table without schema");
  const VarSet all = schema->all();
  if (kind == TableKind::kJoint) {
    if (!targets.empty() || !givens.empty()) {
      fail(ErrorCode::kSchema, "joint tables take no targets or givens");
    }
  } else {
    if (targets.empty()) fail(ErrorCode::kSchema, "conditional table needs at least one target");
    if (!targets.disjoint(givens)) fail(ErrorCode::kSchema, "targets and givens overlap");
    if ((targets | givens) != all) {
      fail(ErrorCode::kSchema, "targets and givens must cover every variable");
    }
  }

  Table t;
  t.schema_ = std::move(schema);
  t.kind_ = kind;
  t.targets_ = targets;
  t.givens_ = givens;
  std::set<Config> seen;
  for (auto& row : rows) {
    if (row.config.size() != t.schema_->size()) {
      fail(ErrorCode::kSchema, "row has " + std::to_string(row.config.size()) + " values, schema has " +
                                   std::to_string(t.schema_->size()) + " variables");
    }
    for (std::size_t i = 0; i < row.config.size(); ++i) {
      if (row.config[i] >= (*t.schema_)[i].domain.size()) {
        fail(ErrorCode::kSchema, "value outside the domain of '" + (*t.schema_)[i].name + "'");
      }
    }
    if (!seen.insert(row.config).second) {
      fail(ErrorCode::kSchema, "duplicate configuration " +
                                   describe(*t.schema_, PartialConfig::of(row.config, all)));
    }
    if (row.p.sign() < 0) {
      fail(ErrorCode::kSchema, "negative probability at " +
                                   describe(*t.schema_, PartialConfig::of(row.config, all)));
    }
    if (row.p.is_zero()) continue;
    if (row.label.empty()) row.label = "t" + std::to_string(t.rows_.size() + 1);
    t.index_.emplace(row.config, t.rows_.size());
    t.rows_.push_back(std::move(row));
  }
  return t;
}

Rational Table::value(const Config& config) const {
  const auto it = index_.find(config);
  return it == index_.end() ? Rational{} : rows_[it->second].p;
}

Rational Table::total_mass() const {
  Rational sum;
  for (const auto& r : rows_) sum += r.p;
  return sum;
}

bool operator==(const Table& a, const Table& b) {
  if (*a.schema_ != *b.schema_ || a.kind_ != b.kind_ || a.targets_ != b.targets_ ||
      a.givens_ != b.givens_ || a.rows_.size() != b.rows_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.rows_.size(); ++i) {
    const auto& x = a.rows_[i];
    const auto& y = b.rows_[i];
    if (x.config != y.config || x.p != y.p || x.label != y.label) return false;
  }
  return true;
}

std::vector<ValidationIssue> validate(const Table& table, ValidationMode mode) {
  std::vector<ValidationIssue> issues;
  if (mode == ValidationMode::kRaw) return issues;
  switch (table.kind()) {
    case TableKind::kJoint: {
      const Rational total = table.total_mass();
      if (total != Rational(1)) {
        issues.push_back({"normalization", "joint probabilities sum to " + total.str() + ", expected 1",
                          std::nullopt});
      }
      break;
    }
    case TableKind::kConditional: {
      // Column sums in order of first appearance of each given configuration.
      std::vector<PartialConfig> order;
      std::map<PartialConfig, Rational> sums;
      for (const auto& r : table.rows()) {
        auto g = PartialConfig::of(r.config, table.givens());
        auto [it, inserted] = sums.try_emplace(g);
        if (inserted) order.push_back(g);
        it->second += r.p;
      }
      for (const auto& g : order) {
        const Rational& s = sums.at(g);
        if (s != Rational(1)) {
          issues.push_back({"normalization",
                            "conditional column " + describe(table.schema(), g) + " sums to " + s.str() +
                                ", expected 1",
                            g});
        }
      }
      break;
    }
    case TableKind::kRaw:
      break;
  }
  return issues;
}

Table marginal(const Table& table, VarSet vars) {
  if (table.kind() != TableKind::kJoint) {
    fail(ErrorCode::kInvalidArgument, "marginal requires a joint table");
  }
  if (!vars.subset_of(table.schema().all())) {
    fail(ErrorCode::kInvalidArgument, "marginal variables are not a subset of the schema");
  }
  std::vector<Variable> kept;
  for (auto i : vars.indices()) kept.push_back(table.schema()[i]);
  auto schema = std::make_shared<const Schema>(std::move(kept));

  std::vector<Row> rows;
  std::map<Config, std::size_t> where;
  for (const auto& r : table.rows()) {
    Config key = project(r.config, vars);
    auto [it, inserted] = where.try_emplace(key, rows.size());
    if (inserted) {
      rows.push_back(Row{std::move(key), r.p, {}});
    } else {
      rows[it->second].p += r.p;
    }
  }
  return Table::joint(std::move(schema), std::move(rows));
}

std::optional<Rational> cond_value(const Table& table, const PartialConfig& target,
                                   const PartialConfig& given) {
  if (!target.vars.disjoint(given.vars)) {
    fail(ErrorCode::kInvalidArgument, "target and given variables overlap");
  }
  if (table.kind() != TableKind::kJoint) {
    if (given.vars != table.givens()) {
      fail(ErrorCode::kInvalidArgument, "conditioning variables must equal the table's givens");
    }
    if (!target.vars.subset_of(table.targets())) {
      fail(ErrorCode::kInvalidArgument, "target variables must be among the table's targets");
    }
  }
  Rational given_mass;
  Rational joint_mass;
  bool defined = false;
  for (const auto& r : table.rows()) {
    if (!given.matches(r.config)) continue;
    defined = true;
    given_mass += r.p;
    if (target.matches(r.config)) joint_mass += r.p;
  }
  if (!defined) return std::nullopt;
  if (table.kind() == TableKind::kJoint) return joint_mass / given_mass;
  return joint_mass;
}

SupportSet support(const Table& table) {
  std::vector<SupportRow> rows;
  rows.reserve(table.rows().size());
  for (const auto& r : table.rows()) rows.push_back({r.config, r.p, r.label});
  return SupportSet(table.schema_ptr(), std::move(rows));
}

}  // namespace cwi
