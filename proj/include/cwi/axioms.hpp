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
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwi/table.hpp"
#include "cwi/varset.hpp"

namespace cwi {

/// The fixed variable set every statement of one derivation lives over.
struct Universe {
  std::vector<std::string> names;

  VarSet all() const { return VarSet::first(names.size()); }
  /// Throws Error(kInvalidArgument) for names outside the universe.
  VarSet varset(const std::vector<std::string>& vars) const;
  std::vector<std::string> names_of(VarSet vars) const;
  friend bool operator==(const Universe&, const Universe&) = default;
};

enum class AxiomKind { kCI, kWI };
std::string_view to_string(AxiomKind kind);

/// I(X ⊥ U−XY | Y) or WI(X ⊥ U−XY | Y). Only X and Y are stored; Z is
/// implied. X and Y may overlap (reflexivity instances keep X ⊆ Y as written).
struct AxiomStatement {
  AxiomKind kind = AxiomKind::kWI;
  VarSet x;
  VarSet y;

  VarSet z(const Universe& u) const { return u.all() - x - y; }
  bool disjoint() const { return x.disjoint(y); }
  friend bool operator==(const AxiomStatement&, const AxiomStatement&) = default;
  friend auto operator<=>(const AxiomStatement&, const AxiomStatement&) = default;
};

/// "WI(A ⊥ C,D | B)", with ∅ for empty sets.
std::string describe(const Universe& u, const AxiomStatement& s);
std::string describe_sets(const Universe& u, AxiomKind kind, VarSet x, VarSet z, VarSet y);

enum class Rule { kWI1, kWI2, kWI3, kCIWI1, kCIWI2 };
std::string_view to_string(Rule rule);
/// Accepts WI1, WI2, WI3, CIWI1 / CI&WI1, CIWI2 / CI&WI2 (case-insensitive).
std::optional<Rule> parse_rule(std::string_view text);
const std::vector<Rule>& all_rules();

/// The free choices a rule application makes.
struct Instantiation {
  VarSet w;          // WI2, WI3
  int branch = 0;    // WI2: 0 for the X−W conclusion, 1 for XW
  VarSet z1;         // CIWI2
  VarSet z2;         // CIWI2
  VarSet x;          // WI1
  VarSet y;          // WI1
  friend bool operator==(const Instantiation&, const Instantiation&) = default;
};

/// One rule application. `literal_z` is the third set exactly as the rule
/// writes it; it differs from the implied U−XY for WI2's first conclusion
/// and for CIWI1, whose literal forms overlap the conditioning set.
struct Conclusion {
  AxiomStatement statement;
  VarSet literal_z;
};

struct DerivationTrace {
  Conclusion derived;
  Rule rule = Rule::kWI1;
  std::vector<AxiomStatement> premises;
  Instantiation instantiation;
};

/// Rule applications. Each throws Error(kInvalidArgument) on a shape or
/// precondition mismatch.
Conclusion apply_wi1(const Universe& u, VarSet x, VarSet y);
std::pair<Conclusion, Conclusion> apply_wi2(const Universe& u, const AxiomStatement& premise, VarSet w);
Conclusion apply_wi3(const Universe& u, const AxiomStatement& premise, VarSet w);
Conclusion apply_ciwi1(const Universe& u, const AxiomStatement& premise);
/// p1 = WI(X ⊥ Z2 | YZ1), p2 = WI(X ⊥ Z1 | YZ2), p3 = I(Z1 ⊥ Z2 | YX).
/// Z1 and Z2 are recovered from the premises.
Conclusion apply_ciwi2(const Universe& u, const AxiomStatement& p1, const AxiomStatement& p2,
                       const AxiomStatement& p3);

/// Re-applies the trace's rule to its premises and instantiation.
bool replay(const Universe& u, const DerivationTrace& trace);

struct ClosureOptions {
  std::set<Rule> rules{Rule::kWI1, Rule::kWI2, Rule::kWI3, Rule::kCIWI1, Rule::kCIWI2};
  std::size_t max_universe = 8;
};

struct Closure {
  std::shared_ptr<const Universe> universe;
  /// Premises first, then derived statements in discovery order.
  std::vector<AxiomStatement> statements;
  std::size_t premise_count = 0;
  /// First derivation of every non-premise statement, in discovery order.
  std::vector<DerivationTrace> traces;

  bool contains(const AxiomStatement& s) const { return index.count(s) != 0U; }
  std::map<AxiomStatement, std::size_t> index;
};

/// Least fixed point of `premises` under the enabled rules. The statement
/// space has at most 2·4^|U| members. Throws Error(kLimit) when the universe
/// exceeds the bound.
Closure closure(std::shared_ptr<const Universe> universe, const std::vector<AxiomStatement>& premises,
                const ClosureOptions& options = {});

struct ProbeParams {
  std::size_t vars = 3;
  std::size_t domain_size = 2;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::set<Rule> rules{Rule::kWI1, Rule::kWI2, Rule::kWI3, Rule::kCIWI1, Rule::kCIWI2};
};

struct ProbeViolation {
  std::size_t trial = 0;
  std::string statement;  // literal reading
  std::string reading;    // "literal" or "repaired"
  std::vector<std::string> premises;
};

struct RuleFindings {
  std::size_t derived = 0;               // non-premise statements first produced by the rule
  std::size_t repaired = 0;              // of those, how many needed the overlap removed
  std::size_t literal_violations = 0;
  std::size_t repaired_violations = 0;
  std::vector<ProbeViolation> examples;  // the first few
};

struct ProbeReport {
  ProbeParams params;
  std::size_t premises_total = 0;
  std::size_t derived_total = 0;
  std::map<Rule, RuleFindings> rules;
};

/// Joint table over variables A, B, ... with values "0".."k-1". About half
/// the cells are zero; the rest get weights 1..9 before normalizing.
Table random_joint_table(std::mt19937_64& rng, std::size_t vars, std::size_t domain_size);

/// Draws `trials` random joint tables, takes every holding disjoint CI and
/// WI statement as premises, closes them, and judges each derived statement
/// twice: as written (overlapping sets allowed) and with the overlap of the
/// independents and the conditioning set removed.
ProbeReport soundness_probe(const ProbeParams& params);

}  // namespace cwi
