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

#include "cwi/axioms.hpp"

#include <algorithm>
#include <deque>

#include "cwi/error.hpp"
#include "cwi/independence.hpp"

namespace cwi {
namespace {

[[noreturn]] void shape(const std::string& msg) { fail(ErrorCode::kInvalidArgument, msg); }

std::string join_names(const Universe& u, VarSet s) {
  if (s.empty()) return "∅";
  std::string out;
  for (const auto& n : u.names_of(s)) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

void require_premise(const Universe& u, const AxiomStatement& s, AxiomKind kind, const char* rule) {
  if (s.kind != kind) {
    shape(std::string(rule) + " needs a " + std::string(to_string(kind)) + " premise");
  }
  if (!(s.x | s.y).subset_of(u.all())) shape(std::string(rule) + ": premise outside the universe");
}

Conclusion make(AxiomKind kind, VarSet x, VarSet y, VarSet literal_z) {
  return {{kind, x, y}, literal_z};
}

}  // namespace

VarSet Universe::varset(const std::vector<std::string>& vars) const {
  VarSet out;
  for (const auto& v : vars) {
    const auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end()) shape("variable '" + v + "' is not in the universe");
    out.insert(static_cast<std::size_t>(it - names.begin()));
  }
  return out;
}

std::vector<std::string> Universe::names_of(VarSet vars) const {
  std::vector<std::string> out;
  for (auto i : vars.indices()) out.push_back(names[i]);
  return out;
}

std::string_view to_string(AxiomKind kind) { return kind == AxiomKind::kCI ? "CI" : "WI"; }

std::string describe_sets(const Universe& u, AxiomKind kind, VarSet x, VarSet z, VarSet y) {
  return std::string(kind == AxiomKind::kCI ? "I" : "WI") + "(" + join_names(u, x) + " ⊥ " +
         join_names(u, z) + " | " + join_names(u, y) + ")";
}

std::string describe(const Universe& u, const AxiomStatement& s) {
  return describe_sets(u, s.kind, s.x, s.z(u), s.y);
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kWI1: return "WI1";
    case Rule::kWI2: return "WI2";
    case Rule::kWI3: return "WI3";
    case Rule::kCIWI1: return "CI&WI1";
    case Rule::kCIWI2: return "CI&WI2";
  }
  return "WI1";
}

std::optional<Rule> parse_rule(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (c != '&') t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  if (t == "WI1") return Rule::kWI1;
  if (t == "WI2") return Rule::kWI2;
  if (t == "WI3") return Rule::kWI3;
  if (t == "CIWI1") return Rule::kCIWI1;
  if (t == "CIWI2") return Rule::kCIWI2;
  return std::nullopt;
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules{Rule::kWI1, Rule::kWI2, Rule::kWI3, Rule::kCIWI1, Rule::kCIWI2};
  return rules;
}

Conclusion apply_wi1(const Universe& u, VarSet x, VarSet y) {
  if (!y.subset_of(u.all())) shape("WI1: Y outside the universe");
  if (!x.subset_of(y)) shape("WI1 needs X ⊆ Y");
  return make(AxiomKind::kWI, x, y, u.all() - y);
}

std::pair<Conclusion, Conclusion> apply_wi2(const Universe& u, const AxiomStatement& p, VarSet w) {
  require_premise(u, p, AxiomKind::kWI, "WI2");
  if (!w.subset_of(p.y)) shape("WI2 needs W ⊆ Y");
  const VarSet all = u.all();
  return {make(AxiomKind::kWI, p.x - w, p.y, all - (p.x | (p.y - w))),
          make(AxiomKind::kWI, p.x | w, p.y, all - (p.x | p.y | w))};
}

Conclusion apply_wi3(const Universe& u, const AxiomStatement& p, VarSet w) {
  require_premise(u, p, AxiomKind::kWI, "WI3");
  if (!w.subset_of(u.all() - p.x - p.y)) shape("WI3 needs W ⊆ U − X − Y");
  return make(AxiomKind::kWI, p.x, p.y | w, u.all() - (p.x | p.y | w));
}

Conclusion apply_ciwi1(const Universe& u, const AxiomStatement& p) {
  require_premise(u, p, AxiomKind::kCI, "CI&WI1");
  return make(AxiomKind::kWI, p.y, p.y, u.all() - (p.x | p.y));
}

Conclusion apply_ciwi2(const Universe& u, const AxiomStatement& p1, const AxiomStatement& p2,
                       const AxiomStatement& p3) {
  require_premise(u, p1, AxiomKind::kWI, "CI&WI2");
  require_premise(u, p2, AxiomKind::kWI, "CI&WI2");
  require_premise(u, p3, AxiomKind::kCI, "CI&WI2");
  const VarSet all = u.all();
  const VarSet x = p1.x;
  const VarSet z2 = all - p1.x - p1.y;
  const VarSet z1 = all - p2.x - p2.y;
  const VarSet y = p1.y & p2.y;
  const bool ok = p2.x == x && x.disjoint(p1.y) && x.disjoint(p2.y) && z1.disjoint(z2) &&
                  p1.y == (y | z1) && p2.y == (y | z2) && p3.x == z1 && p3.y == (y | x);
  if (!ok) shape("CI&WI2: premises do not unify");
  return make(AxiomKind::kWI, x, y, z1 | z2);
}

bool replay(const Universe& u, const DerivationTrace& t) {
  try {
    const auto& ps = t.premises;
    const auto& in = t.instantiation;
    Conclusion c;
    switch (t.rule) {
      case Rule::kWI1:
        if (!ps.empty()) return false;
        c = apply_wi1(u, in.x, in.y);
        break;
      case Rule::kWI2: {
        if (ps.size() != 1) return false;
        auto both = apply_wi2(u, ps[0], in.w);
        c = in.branch == 0 ? both.first : both.second;
        break;
      }
      case Rule::kWI3:
        if (ps.size() != 1) return false;
        c = apply_wi3(u, ps[0], in.w);
        break;
      case Rule::kCIWI1:
        if (ps.size() != 1) return false;
        c = apply_ciwi1(u, ps[0]);
        break;
      case Rule::kCIWI2:
        if (ps.size() != 3) return false;
        c = apply_ciwi2(u, ps[0], ps[1], ps[2]);
        if (u.all() - ps[1].x - ps[1].y != in.z1 || u.all() - ps[0].x - ps[0].y != in.z2) return false;
        break;
    }
    return c.statement == t.derived.statement && c.literal_z == t.derived.literal_z;
  } catch (const Error&) {
    return false;
  }
}

// --- closure ----------------------------------------------------------------

namespace {

class Engine {
 public:
  Engine(std::shared_ptr<const Universe> u, const ClosureOptions& o) : u_(*u), o_(o) {
    out_.universe = std::move(u);
  }

  void seed(const std::vector<AxiomStatement>& premises) {
    for (const auto& p : premises) {
      if (!(p.x | p.y).subset_of(u_.all())) shape("premise outside the universe");
      if (insert(p)) ++out_.premise_count;
    }
    if (enabled(Rule::kWI1)) {
      for_each_subset(u_.all(), [&](VarSet y) {
        for_each_subset(y, [&](VarSet x) {
          Instantiation in;
          in.x = x;
          in.y = y;
          derive(apply_wi1(u_, x, y), Rule::kWI1, {}, in);
        });
      });
    }
  }

  void run() {
    while (!work_.empty()) {
      const AxiomStatement s = out_.statements[work_.front()];
      work_.pop_front();
      if (s.kind == AxiomKind::kWI) {
        step_wi(s);
      } else {
        step_ci(s);
      }
    }
  }

  Closure take() { return std::move(out_); }

 private:
  bool enabled(Rule r) const { return o_.rules.count(r) != 0U; }

  bool insert(const AxiomStatement& s) {
    if (out_.index.count(s) != 0U) return false;
    out_.index.emplace(s, out_.statements.size());
    work_.push_back(out_.statements.size());
    out_.statements.push_back(s);
    if (s.kind == AxiomKind::kWI) wi_by_x_[s.x].push_back(s);
    return true;
  }

  void derive(const Conclusion& c, Rule rule, std::vector<AxiomStatement> premises, Instantiation in) {
    if (insert(c.statement)) out_.traces.push_back({c, rule, std::move(premises), in});
  }

  void step_wi(const AxiomStatement& s) {
    if (enabled(Rule::kWI2)) {
      for_each_subset(s.y, [&](VarSet w) {
        const auto [a, b] = apply_wi2(u_, s, w);
        Instantiation in;
        in.w = w;
        derive(a, Rule::kWI2, {s}, in);
        in.branch = 1;
        derive(b, Rule::kWI2, {s}, in);
      });
    }
    if (enabled(Rule::kWI3)) {
      for_each_subset(u_.all() - s.x - s.y, [&](VarSet w) {
        Instantiation in;
        in.w = w;
        derive(apply_wi3(u_, s, w), Rule::kWI3, {s}, in);
      });
    }
    if (enabled(Rule::kCIWI2)) {
      // Copy: deriving may append to the same bucket.
      const std::vector<AxiomStatement> partners = wi_by_x_[s.x];
      for (const auto& q : partners) {
        try_ciwi2(s, q);
        try_ciwi2(q, s);
      }
    }
  }

  void step_ci(const AxiomStatement& s) {
    if (enabled(Rule::kCIWI1)) derive(apply_ciwi1(u_, s), Rule::kCIWI1, {s}, {});
    if (enabled(Rule::kCIWI2)) {
      // s = I(Z1 ⊥ Z2 | YX): split its conditioning set into X and Y.
      const VarSet z1 = s.x;
      const VarSet z2 = u_.all() - s.x - s.y;
      if (!z1.disjoint(s.y)) return;
      for_each_subset(s.y, [&](VarSet x) {
        const VarSet y = s.y - x;
        const AxiomStatement p1{AxiomKind::kWI, x, y | z1};
        const AxiomStatement p2{AxiomKind::kWI, x, y | z2};
        if (out_.contains(p1) && out_.contains(p2)) try_ciwi2(p1, p2);
      });
    }
  }

  void try_ciwi2(const AxiomStatement& p1, const AxiomStatement& p2) {
    const VarSet all = u_.all();
    const VarSet z2 = all - p1.x - p1.y;
    const VarSet z1 = all - p2.x - p2.y;
    const VarSet y = p1.y & p2.y;
    const VarSet x = p1.x;
    if (!x.disjoint(p1.y) || !x.disjoint(p2.y) || !z1.disjoint(z2)) return;
    if (p1.y != (y | z1) || p2.y != (y | z2)) return;
    const AxiomStatement p3{AxiomKind::kCI, z1, y | x};
    if (!out_.contains(p3)) return;
    Instantiation in;
    in.z1 = z1;
    in.z2 = z2;
    derive(apply_ciwi2(u_, p1, p2, p3), Rule::kCIWI2, {p1, p2, p3}, in);
  }

  const Universe& u_;
  const ClosureOptions& o_;
  Closure out_;
  std::deque<std::size_t> work_;
  std::map<VarSet, std::vector<AxiomStatement>> wi_by_x_;
};

}  // namespace

Closure closure(std::shared_ptr<const Universe> universe, const std::vector<AxiomStatement>& premises,
                const ClosureOptions& options) {
  if (!universe) shape("closure needs a universe");
  if (universe->names.size() > options.max_universe) {
    fail(ErrorCode::kLimit, "universe of " + std::to_string(universe->names.size()) +
                                " variables exceeds the bound of " + std::to_string(options.max_universe));
  }
  Engine e(std::move(universe), options);
  e.seed(premises);
  e.run();
  return e.take();
}

// --- probe ------------------------------------------------------------------

Table random_joint_table(std::mt19937_64& rng, std::size_t vars, std::size_t domain_size) {
  if (vars == 0 || vars > 26 || domain_size == 0) shape("random tables need 1..26 variables and a nonempty domain");
  std::vector<Variable> vs;
  std::vector<std::string> domain;
  for (std::size_t k = 0; k < domain_size; ++k) domain.push_back(std::to_string(k));
  for (std::size_t i = 0; i < vars; ++i) vs.push_back({std::string(1, static_cast<char>('A' + i)), domain});
  auto schema = std::make_shared<const Schema>(std::move(vs));
  const std::uint64_t cells = schema->domain_product(schema->all());
  if (cells > 1'000'000) fail(ErrorCode::kLimit, "random table too large");

  std::vector<std::uint64_t> weight(cells, 0);
  std::uint64_t total = 0;
  for (auto& w : weight) {
    if (rng() % 2 == 1) w = 1 + rng() % 9;
    total += w;
  }
  if (total == 0) {
    weight[rng() % cells] = 1;
    total = 1;
  }
  std::vector<Row> rows;
  for (std::uint64_t c = 0; c < cells; ++c) {
    if (weight[c] == 0) continue;
    Config config(vars);
    std::uint64_t rest = c;
    for (std::size_t i = vars; i-- > 0;) {
      config[i] = static_cast<std::uint32_t>(rest % domain_size);
      rest /= domain_size;
    }
    rows.push_back({std::move(config), Rational(static_cast<long>(weight[c]), static_cast<long>(total)), ""});
  }
  return Table::joint(std::move(schema), std::move(rows));
}

namespace {

bool holds_relaxed(const Table& t, AxiomKind kind, VarSet x, VarSet z, VarSet y) {
  return kind == AxiomKind::kCI ? holds_ci_relaxed(t, x, z, y) : holds_wi_relaxed(t, x, z, y);
}

constexpr std::size_t kExamplesPerRule = 5;

}  // namespace

ProbeReport soundness_probe(const ProbeParams& params) {
  ProbeReport report;
  report.params = params;
  for (auto r : params.rules) report.rules[r];
  if (params.trials == 0) return report;

  std::mt19937_64 rng(params.seed);
  ClosureOptions opts;
  opts.rules = params.rules;
  for (std::size_t trial = 0; trial < params.trials; ++trial) {
    const Table table = random_joint_table(rng, params.vars, params.domain_size);
    auto u = std::make_shared<Universe>();
    u->names = table.schema().names(table.schema().all());
    const VarSet all = u->all();

    std::vector<AxiomStatement> premises;
    for (auto kind : {AxiomKind::kCI, AxiomKind::kWI}) {
      for_each_subset(all, [&](VarSet y) {
        for_each_subset(all - y, [&](VarSet x) {
          if (holds_relaxed(table, kind, x, all - x - y, y)) premises.push_back({kind, x, y});
        });
      });
    }
    const Closure c = closure(u, premises, opts);
    report.premises_total += c.premise_count;
    report.derived_total += c.traces.size();

    for (const auto& t : c.traces) {
      RuleFindings& f = report.rules[t.rule];
      ++f.derived;
      const AxiomStatement& s = t.derived.statement;
      const VarSet lz = t.derived.literal_z;
      const bool needs_repair = !s.x.disjoint(s.y) || !lz.disjoint(s.y);
      if (needs_repair) ++f.repaired;
      auto record = [&](const char* reading, VarSet x, VarSet z) {
        if (f.examples.size() >= kExamplesPerRule) return;
        ProbeViolation v;
        v.trial = trial;
        v.statement = describe_sets(*u, s.kind, x, z, s.y);
        v.reading = reading;
        for (const auto& p : t.premises) v.premises.push_back(describe(*u, p));
        f.examples.push_back(std::move(v));
      };
      if (!holds_relaxed(table, s.kind, s.x, lz, s.y)) {
        ++f.literal_violations;
        record("literal", s.x, lz);
      }
      if (!holds_relaxed(table, s.kind, s.x - s.y, lz - s.y, s.y)) {
        ++f.repaired_violations;
        record("repaired", s.x - s.y, lz - s.y);
      }
    }
  }
  return report;
}

}  // namespace cwi
