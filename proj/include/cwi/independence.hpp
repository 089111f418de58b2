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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwi/partitions.hpp"
#include "cwi/table.hpp"

namespace cwi {

enum class StatementKind { kCI, kCSI, kPCI, kCWI, kWI };
std::string_view to_string(StatementKind kind);
std::optional<StatementKind> parse_statement_kind(std::string_view text);

/// I(X ⊥ Z | Y) and its contextual and weak relatives.
///
/// For CSI, `y` is the extra conditioning set and `context` is C = c. For PCI
/// and CWI the fixed value y is the context itself: `y == context.vars`.
/// CI and WI carry an empty context.
struct Statement {
  StatementKind kind = StatementKind::kCI;
  VarSet x;
  VarSet z;
  VarSet y;
  PartialConfig context;
};

struct ConditionalPoint {
  std::vector<std::uint32_t> z;  // over Statement::z
  Rational value;
};

/// Two conditional values that should agree but do not. `second` is either
/// the value at another z, or (when `against_marginal`) P(x | y) itself, in
/// which case `second.z` is empty.
struct Counterexample {
  std::vector<std::uint32_t> x;  // over Statement::x
  std::vector<std::uint32_t> y;  // over Statement::y
  ConditionalPoint first;
  ConditionalPoint second;
  bool against_marginal = false;
};

struct ClassVerdict {
  std::vector<std::size_t> rows;  // indices into the certificate's support
  std::vector<std::vector<std::uint32_t>> x_domain;
  std::vector<std::vector<std::uint32_t>> y_domain;
  std::vector<std::vector<std::uint32_t>> z_domain;
  bool ci_holds = false;
  /// Counts toward CWI's existential condition: class-CI holds and either
  /// the class spans at least two z-values or it is the only class.
  bool witness = false;
  std::optional<Counterexample> failure;
};

struct Certificate {
  // CI / CSI / PCI
  std::optional<Counterexample> counterexample;
  std::size_t defined_conditionings = 0;

  // CWI / WI: the support the relations live on (context-restricted for CWI).
  std::vector<std::string> support_labels;
  bool commutes = false;
  /// Pair in exactly one of θ(XY)∘θ(YZ) and θ(YZ)∘θ(XY), as support indices.
  std::optional<std::pair<std::size_t, std::size_t>> non_commuting;
  bool non_commuting_in_xy_first = false;
  std::vector<ClassVerdict> classes;
};

struct Verdict {
  Statement statement;
  bool holds = false;
  /// No conditional value was defined, so the statement holds by empty
  /// quantification (strong kinds) or the support is empty (weak kinds).
  bool vacuous = false;
  /// Number of (y, z) conditionings skipped because P(y, z) = 0.
  std::uint64_t vacuous_count = 0;
  Certificate certificate;
};

/// Conditional probabilities in conditional and raw tables are the stored
/// values; a given configuration with no positive row is undefined, the
/// counterpart of P(y, z) = 0. Those tables require X to be the target set
/// and the conditioning variables to be exactly the givens.
Verdict check_ci(const Table& table, VarSet x, VarSet z, VarSet y);
Verdict check_csi(const Table& table, VarSet x, VarSet z, VarSet y, const PartialConfig& context);
Verdict check_pci(const Table& table, VarSet x, VarSet z, const PartialConfig& y);

/// Weak checks are nonembedded: X ∪ Z ∪ Y must be the whole schema.
/// Inside a composed class π, class-CI means P(x | y, z) is the same for all
/// z ∈ V_Z^π, for each x ∈ V_X^π (absent rows read as 0); joint tables also
/// compare against the class-restricted P(x | y).
Verdict check_cwi(const Table& table, VarSet x, VarSet z, const PartialConfig& y);
Verdict check_wi(const Table& table, VarSet x, VarSet z, VarSet y);

/// Dispatches on statement.kind.
Verdict check(const Table& table, const Statement& statement);

/// Re-derives the verdict from its certificate and the table alone and
/// reports whether it agrees with `verdict.holds`.
bool replay(const Table& table, const Verdict& verdict);

/// Semantic evaluation without the statement-shape preconditions, for joint
/// tables: the sets may overlap, be empty, or leave variables out (which
/// evaluates on the marginal). Used to judge literal axiom readings.
bool holds_ci_relaxed(const Table& joint, VarSet x, VarSet z, VarSet y);
bool holds_wi_relaxed(const Table& joint, VarSet x, VarSet z, VarSet y);

struct EnumerationLimits {
  std::size_t max_context_variables = 1;
  std::size_t max_contexts_per_set = 4096;
  std::size_t max_statements = 100000;
};

struct Enumeration {
  std::vector<Verdict> verdicts;
  bool truncated = false;
  std::string truncation_reason;
};

/// All nonembedded statements of the requested kinds, ordered by kind, then
/// X, Z, context variables (each as a name-sorted list, lexicographically),
/// then context values in domain order. Statements whose shape a conditional
/// or raw table cannot answer are skipped.
Enumeration enumerate_statements(const Table& table, std::vector<StatementKind> kinds,
                                 const EnumerationLimits& limits = {});

}  // namespace cwi
