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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwi/rational.hpp"
#include "cwi/varset.hpp"

namespace cwi {

struct Variable {
  std::string name;
  std::vector<std::string> domain;

  std::optional<std::uint32_t> value_index(std::string_view value) const;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ordered list of uniquely named variables with nonempty, duplicate-free
/// domains. Construction validates; an invalid schema never exists.
class Schema {
 public:
  explicit Schema(std::vector<Variable> variables);

  std::size_t size() const { return variables_.size(); }
  const Variable& operator[](std::size_t i) const { return variables_[i]; }
  const std::vector<Variable>& variables() const { return variables_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws Error(kSchema) naming the variable when it is not declared.
  std::size_t require(std::string_view name) const;
  VarSet varset(const std::vector<std::string>& names) const;
  VarSet all() const { return VarSet::first(size()); }
  std::vector<std::string> names(VarSet vars) const;

  /// Number of configurations over `vars`, saturating at UINT64_MAX.
  std::uint64_t domain_product(VarSet vars) const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::vector<Variable> variables_;
};

/// A full configuration: one value index per schema variable, in schema order.
using Config = std::vector<std::uint32_t>;

/// Values of `config` at the positions in `vars`, ascending.
std::vector<std::uint32_t> project(const Config& config, VarSet vars);

/// An assignment to a subset of the schema variables. Values are stored in
/// ascending variable position. A value of kNoValue matches no configuration;
/// it arises when an assignment names a value outside the declared domain.
struct PartialConfig {
  static constexpr std::uint32_t kNoValue = UINT32_MAX;

  VarSet vars;
  std::vector<std::uint32_t> values;

  /// Builds from (variable, value) name pairs. Unknown variables throw;
  /// unknown values become kNoValue.
  static PartialConfig parse(const Schema& schema,
                             const std::vector<std::pair<std::string, std::string>>& items);
  static PartialConfig of(const Config& config, VarSet vars) { return {vars, project(config, vars)}; }

  bool matches(const Config& config) const;
  bool empty() const { return vars.empty(); }
  friend bool operator==(const PartialConfig&, const PartialConfig&) = default;
  friend auto operator<=>(const PartialConfig&, const PartialConfig&) = default;
};

/// Renders "(X=1, Y=0)" style text for diagnostics.
std::string describe(const Schema& schema, const PartialConfig& config);

enum class TableKind { kJoint, kConditional, kRaw };
std::string_view to_string(TableKind kind);

struct Row {
  Config config;
  Rational p;
  std::string label;
};

/// Discrete probability table. Rows hold strictly positive values in
/// document order; absent configurations read as zero.
///
/// A Table always satisfies the schema-level invariants (values in domain,
/// no duplicate configurations, nonnegative values, targets/givens partition
/// the schema for conditional and raw kinds). Normalization is checked by
/// validate() and enforced by strict loading, not by construction.
class Table {
 public:
  /// Explicit zero rows are accepted and dropped. Rows without a label get
  /// "t<k>", where k counts the positive rows in order.
  static Table make(std::shared_ptr<const Schema> schema, TableKind kind, VarSet targets,
                    VarSet givens, std::vector<Row> rows);
  static Table joint(std::shared_ptr<const Schema> schema, std::vector<Row> rows) {
    return make(std::move(schema), TableKind::kJoint, VarSet{}, VarSet{}, std::move(rows));
  }

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }
  TableKind kind() const { return kind_; }
  VarSet targets() const { return targets_; }
  VarSet givens() const { return givens_; }
  const std::vector<Row>& rows() const { return rows_; }

  Rational value(const Config& config) const;
  Rational total_mass() const;

  /// Same schema, kind, sets, and row sequence (labels included).
  friend bool operator==(const Table& a, const Table& b);

 private:
  Table() = default;

  std::shared_ptr<const Schema> schema_;
  TableKind kind_ = TableKind::kJoint;
  VarSet targets_;
  VarSet givens_;
  std::vector<Row> rows_;
  std::map<Config, std::size_t> index_;
};

enum class ValidationMode { kStrict, kRaw };

struct ValidationIssue {
  std::string code;  // "normalization" or "partition"
  std::string message;
  std::optional<PartialConfig> at;
};

/// Every violated kind-level invariant. Raw mode runs no checks beyond the
/// schema-level ones that construction already guarantees.
std::vector<ValidationIssue> validate(const Table& table, ValidationMode mode);

/// Joint table over `vars` (schema order). Rows appear in order of first
/// occurrence of their projection; labels are reassigned.
Table marginal(const Table& table, VarSet vars);

/// P(target | given). Joint tables derive the ratio; conditional and raw
/// tables read stored values and require `given.vars == givens()` and
/// `target.vars ⊆ targets()`. Returns nullopt when the conditioning event has
/// no positive row.
std::optional<Rational> cond_value(const Table& table, const PartialConfig& target,
                                   const PartialConfig& given);

struct SupportRow {
  Config config;
  Rational p;
  std::string label;
};

/// Indexed positive-probability configurations, in table order. Indices are
/// dense from 0; labels keep the original row names.
class SupportSet {
 public:
  SupportSet(std::shared_ptr<const Schema> schema, std::vector<SupportRow> rows)
      : schema_(std::move(schema)), rows_(std::move(rows)) {}

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const SupportRow& operator[](std::size_t i) const { return rows_[i]; }
  const std::vector<SupportRow>& rows() const { return rows_; }

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<SupportRow> rows_;
};

SupportSet support(const Table& table);

}  // namespace cwi
