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

#include "cwi/independence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cwi/error.hpp"

namespace cwi {
namespace {

using Key = std::vector<std::uint32_t>;

Key concat(Key a, const Key& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool is_joint(const Table& t) { return t.kind() == TableKind::kJoint; }

// Masses of the projections needed for P(x | y, z), grouped by y.
struct Masses {
  std::map<Key, Rational> y;
  std::map<Key, std::map<Key, Rational>> xy;   // y -> x -> mass
  std::map<Key, std::map<Key, Rational>> yz;   // y -> z -> mass
  std::map<Key, Rational> yzx;                 // (y, z, x) -> mass

  template <typename RowRange>
  Masses(const RowRange& rows, VarSet xs, VarSet zs, VarSet ys) {
    for (const SupportRow* r : rows) {
      const Key px = project(r->config, xs);
      const Key py = project(r->config, ys);
      const Key pz = project(r->config, zs);
      y[py] += r->p;
      xy[py][px] += r->p;
      yz[py][pz] += r->p;
      yzx[concat(concat(py, pz), px)] += r->p;
    }
  }

  Rational at(const Key& py, const Key& pz, const Key& px) const {
    const auto it = yzx.find(concat(concat(py, pz), px));
    return it == yzx.end() ? Rational{} : it->second;
  }
};

// P(x | y, z) inside `m`: a ratio for joint tables, the stored entry otherwise.
Rational conditional(const Masses& m, bool joint, const Key& py, const Key& pz, const Key& px) {
  const Rational v = m.at(py, pz, px);
  return joint ? v / m.yz.at(py).at(pz) : v;
}

// Constancy across every defined z, for every y. Returns the
// first counterexample in (y, x, z) order.
std::optional<Counterexample> constancy(const Masses& m, bool joint,
                                        const std::vector<Key>* x_values,
                                        const std::vector<Key>* z_values) {
  for (const auto& [py, zmap] : m.yz) {
    std::vector<Key> xs;
    if (x_values != nullptr) {
      xs = *x_values;
    } else {
      for (const auto& [px, mass] : m.xy.at(py)) xs.push_back(px);
    }
    std::vector<Key> zs;
    if (z_values != nullptr) {
      for (const auto& pz : *z_values) {
        if (zmap.count(pz) != 0U) zs.push_back(pz);
      }
    } else {
      for (const auto& [pz, mass] : zmap) zs.push_back(pz);
    }
    if (zs.empty()) continue;
    for (const auto& px : xs) {
      const Rational ref = conditional(m, joint, py, zs.front(), px);
      for (std::size_t k = 1; k < zs.size(); ++k) {
        const Rational v = conditional(m, joint, py, zs[k], px);
        if (v != ref) return Counterexample{px, py, {zs.front(), ref}, {zs[k], v}, false};
      }
      if (joint) {
        const auto& xm = m.xy.at(py);
        const auto it = xm.find(px);
        const Rational marg = it == xm.end() ? Rational{} : it->second / m.y.at(py);
        if (marg != ref) return Counterexample{px, py, {zs.front(), ref}, {{}, marg}, true};
      }
    }
  }
  return std::nullopt;
}

std::vector<const SupportRow*> rows_of(const SupportSet& s) {
  std::vector<const SupportRow*> out;
  out.reserve(s.size());
  for (const auto& r : s.rows()) out.push_back(&r);
  return out;
}

// Strong check over the rows matching `context`.
void strong_core(const Table& table, VarSet x, VarSet z, VarSet y, const PartialConfig& context,
                 Verdict& v) {
  const SupportSet s = restrict_context(support(table), context);
  const Masses m(rows_of(s), x, z, y);
  std::size_t defined = 0;
  for (const auto& [py, zmap] : m.yz) defined += zmap.size();
  v.certificate.defined_conditionings = defined;
  const std::uint64_t total = table.schema().domain_product(y | z);
  v.vacuous_count = total == UINT64_MAX ? UINT64_MAX : total - defined;
  v.vacuous = defined == 0;
  v.certificate.counterexample = constancy(m, is_joint(table), nullptr, nullptr);
  v.holds = !v.certificate.counterexample.has_value();
}

// Class-restricted CI of one composed class.
void class_ci(const SupportSet& s, bool joint, VarSet x, VarSet z, VarSet y, ClassVerdict& cv) {
  std::vector<const SupportRow*> rows;
  for (auto i : cv.rows) rows.push_back(&s[i]);
  const Masses m(rows, x, z, y);
  cv.failure = constancy(m, joint, &cv.x_domain, &cv.z_domain);
  cv.ci_holds = !cv.failure.has_value();
}

// Weak check on support `s`. With `existential` (CWI) one witness class
// suffices; otherwise (WI) every class must satisfy class-CI.
void weak_core(const SupportSet& s, bool joint, VarSet x, VarSet z, VarSet y, bool existential,
               Verdict& v) {
  Certificate& cert = v.certificate;
  for (const auto& r : s.rows()) cert.support_labels.push_back(r.label);
  v.vacuous = s.empty();

  const Partition pxy = theta(s, x | y);
  const Partition pyz = theta(s, y | z);
  const CommuteResult cr = commutes(pxy, pyz);
  cert.commutes = cr.commutes;
  if (!cr.commutes) {
    cert.non_commuting = cr.witness;
    cert.non_commuting_in_xy_first = cr.witness_in_pq;
    v.holds = false;
    return;
  }
  const auto& blocks = cr.partition->blocks();
  bool all = true;
  bool any_witness = false;
  for (const auto& block : blocks) {
    ClassVerdict cv;
    cv.rows = block;
    cv.x_domain = projected_domain(block, s, x);
    cv.y_domain = projected_domain(block, s, y);
    cv.z_domain = projected_domain(block, s, z);
    class_ci(s, joint, x, z, y, cv);
    cv.witness = cv.ci_holds && (cv.z_domain.size() >= 2 || blocks.size() == 1);
    all = all && cv.ci_holds;
    any_witness = any_witness || cv.witness;
    cert.classes.push_back(std::move(cv));
  }
  v.holds = existential ? any_witness : all;
}

[[noreturn]] void shape_error(const std::string& msg) { fail(ErrorCode::kInvalidArgument, msg); }

void require_in_schema(const Table& t, VarSet vars) {
  if (!vars.subset_of(t.schema().all())) shape_error("variables outside the schema");
}

void require_common(const Table& t, VarSet x, VarSet z, VarSet y, VarSet c) {
  require_in_schema(t, x | z | y | c);
  if (x.empty()) shape_error("X must be nonempty");
  if (z.empty()) shape_error("Z must be nonempty");
  if (!x.disjoint(z) || !x.disjoint(y) || !z.disjoint(y)) shape_error("X, Z and Y must be pairwise disjoint");
  if (!c.disjoint(x | y | z)) shape_error("context variables overlap X, Z or Y");
}

void require_readable(const Table& t, VarSet x, VarSet conditioning) {
  if (is_joint(t)) return;
  if (x != t.targets()) {
    shape_error("X must equal the table's target variables (" +
                std::to_string(t.targets().size()) + " declared)");
  }
  if (conditioning != t.givens()) {
    shape_error("conditioning variables must equal the table's given variables");
  }
}

void require_nonembedded(const Table& t, VarSet x, VarSet z, VarSet y) {
  if ((x | z | y) != t.schema().all()) shape_error("X, Z and Y must cover every variable");
}

}  // namespace

std::string_view to_string(StatementKind kind) {
  switch (kind) {
    case StatementKind::kCI: return "CI";
    case StatementKind::kCSI: return "CSI";
    case StatementKind::kPCI: return "PCI";
    case StatementKind::kCWI: return "CWI";
    case StatementKind::kWI: return "WI";
  }
  return "CI";
}

std::optional<StatementKind> parse_statement_kind(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "CI") return StatementKind::kCI;
  if (t == "CSI") return StatementKind::kCSI;
  if (t == "PCI") return StatementKind::kPCI;
  if (t == "CWI") return StatementKind::kCWI;
  if (t == "WI") return StatementKind::kWI;
  return std::nullopt;
}

Verdict check_ci(const Table& table, VarSet x, VarSet z, VarSet y) {
  require_common(table, x, z, y, VarSet{});
  require_readable(table, x, y | z);
  Verdict v;
  v.statement = {StatementKind::kCI, x, z, y, {}};
  strong_core(table, x, z, y, PartialConfig{}, v);
  return v;
}

Verdict check_csi(const Table& table, VarSet x, VarSet z, VarSet y, const PartialConfig& context) {
  require_common(table, x, z, y, context.vars);
  require_readable(table, x, y | z | context.vars);
  Verdict v;
  v.statement = {StatementKind::kCSI, x, z, y, context};
  strong_core(table, x, z, y, context, v);
  return v;
}

Verdict check_pci(const Table& table, VarSet x, VarSet z, const PartialConfig& y) {
  Verdict v = check_csi(table, x, z, VarSet{}, y);
  v.statement = {StatementKind::kPCI, x, z, y.vars, y};
  return v;
}

Verdict check_cwi(const Table& table, VarSet x, VarSet z, const PartialConfig& y) {
  require_common(table, x, z, y.vars, VarSet{});
  require_nonembedded(table, x, z, y.vars);
  require_readable(table, x, y.vars | z);
  Verdict v;
  v.statement = {StatementKind::kCWI, x, z, y.vars, y};
  weak_core(restrict_context(support(table), y), is_joint(table), x, z, y.vars, true, v);
  return v;
}

Verdict check_wi(const Table& table, VarSet x, VarSet z, VarSet y) {
  require_common(table, x, z, y, VarSet{});
  require_nonembedded(table, x, z, y);
  require_readable(table, x, y | z);
  Verdict v;
  v.statement = {StatementKind::kWI, x, z, y, {}};
  weak_core(support(table), is_joint(table), x, z, y, false, v);
  return v;
}

Verdict check(const Table& table, const Statement& s) {
  switch (s.kind) {
    case StatementKind::kCI: return check_ci(table, s.x, s.z, s.y);
    case StatementKind::kCSI: return check_csi(table, s.x, s.z, s.y, s.context);
    case StatementKind::kPCI:
      if (s.y != s.context.vars) shape_error("PCI needs a value for every Y variable");
      return check_pci(table, s.x, s.z, s.context);
    case StatementKind::kCWI:
      if (s.y != s.context.vars) shape_error("CWI needs a value for every Y variable");
      return check_cwi(table, s.x, s.z, s.context);
    case StatementKind::kWI: return check_wi(table, s.x, s.z, s.y);
  }
  shape_error("unknown statement kind");
}

bool holds_ci_relaxed(const Table& joint, VarSet x, VarSet z, VarSet y) {
  if (!is_joint(joint)) shape_error("relaxed evaluation needs a joint table");
  require_in_schema(joint, x | z | y);
  Verdict v;
  strong_core(joint, x, z, y, PartialConfig{}, v);
  return v.holds;
}

bool holds_wi_relaxed(const Table& joint, VarSet x, VarSet z, VarSet y) {
  if (!is_joint(joint)) shape_error("relaxed evaluation needs a joint table");
  require_in_schema(joint, x | z | y);
  // Rows that agree on X ∪ Y ∪ Z sit in the same block of both relations, so
  // working on the full support is the same as working on the marginal's.
  Verdict v;
  weak_core(support(joint), true, x, z, y, false, v);
  return v.holds;
}

// --- replay ---------------------------------------------------------------

namespace {

PartialConfig assemble(VarSet vars, const Key& values) { return PartialConfig{vars, values}; }

PartialConfig merge(const PartialConfig& a, const PartialConfig& b) {
  PartialConfig out;
  out.vars = a.vars | b.vars;
  std::size_t ia = 0;
  std::size_t ib = 0;
  for (auto i : out.vars.indices()) {
    if (a.vars.contains(i)) {
      out.values.push_back(a.values[ia++]);
    } else {
      out.values.push_back(b.values[ib++]);
    }
  }
  return out;
}

// Odometer over the domain product of `vars`.
template <typename Fn>
void for_each_config(const Schema& schema, VarSet vars, Fn&& fn) {
  const auto idx = vars.indices();
  Key cur(idx.size(), 0);
  while (true) {
    fn(cur);
    std::size_t k = idx.size();
    while (k > 0) {
      --k;
      if (++cur[k] < schema[idx[k]].domain.size()) break;
      cur[k] = 0;
      if (k == 0) return;
    }
    if (idx.empty()) return;
  }
}

constexpr std::uint64_t kReplayEnumerationLimit = 200000;

bool replay_strong(const Table& t, const Verdict& v) {
  const Statement& s = v.statement;
  const bool joint = is_joint(t);
  VarSet extra = s.kind == StatementKind::kPCI ? VarSet{} : s.y;
  const PartialConfig ctx = s.context;

  if (const auto& cx = v.certificate.counterexample) {
    if (v.holds) return false;
    const PartialConfig px = assemble(s.x, cx->x);
    const PartialConfig py = merge(assemble(extra, cx->y), ctx);
    const auto a = cond_value(t, px, merge(py, assemble(s.z, cx->first.z)));
    std::optional<Rational> b;
    if (cx->against_marginal) {
      if (!joint) return false;
      b = cond_value(t, px, py);
    } else {
      b = cond_value(t, px, merge(py, assemble(s.z, cx->second.z)));
    }
    // Raw tables read an undefined column as absent, never as a counterexample.
    return a && b && *a == cx->first.value && *b == cx->second.value && *a != *b;
  }
  if (!v.holds) return false;

  // No certificate of failure: re-verify every conditioning by brute force.
  if (t.schema().domain_product(extra | s.z | s.x) > kReplayEnumerationLimit) {
    return check(t, s).holds;
  }
  bool ok = true;
  for_each_config(t.schema(), extra, [&](const Key& yv) {
    const PartialConfig py = merge(assemble(extra, yv), ctx);
    for_each_config(t.schema(), s.x, [&](const Key& xv) {
      const PartialConfig px = assemble(s.x, xv);
      std::optional<Rational> ref = joint ? cond_value(t, px, py) : std::nullopt;
      bool ref_from_z = !joint;
      for_each_config(t.schema(), s.z, [&](const Key& zv) {
        const auto val = cond_value(t, px, merge(py, assemble(s.z, zv)));
        if (!val) return;
        if (ref_from_z && !ref) {
          ref = val;
          return;
        }
        if (!ref || *val != *ref) ok = false;
      });
    });
  });
  return ok;
}

bool replay_weak(const Table& t, const Verdict& v) {
  const Statement& s = v.statement;
  const bool joint = is_joint(t);
  const SupportSet sup = s.kind == StatementKind::kCWI ? restrict_context(support(t), s.context) : support(t);
  const auto& cert = v.certificate;
  if (cert.support_labels.size() != sup.size()) return false;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (cert.support_labels[i] != sup[i].label) return false;
  }
  const std::size_t n = sup.size();
  auto same = [&](std::size_t i, std::size_t j, VarSet vars) {
    return project(sup[i].config, vars) == project(sup[j].config, vars);
  };
  auto in_composition = [&](std::size_t i, std::size_t k, VarSet first, VarSet second) {
    for (std::size_t j = 0; j < n; ++j) {
      if (same(i, j, first) && same(j, k, second)) return true;
    }
    return false;
  };
  const VarSet xy = s.x | s.y;
  const VarSet yz = s.y | s.z;

  if (!cert.commutes) {
    if (v.holds || !cert.non_commuting) return false;
    const auto [i, k] = *cert.non_commuting;
    if (i >= n || k >= n) return false;
    const bool a = in_composition(i, k, xy, yz);
    const bool b = in_composition(i, k, yz, xy);
    return a != b && a == cert.non_commuting_in_xy_first;
  }

  // Classes must partition the support, each closed under both relations
  // and fully related by the composition.
  std::vector<std::size_t> owner(n, SIZE_MAX);
  for (std::size_t c = 0; c < cert.classes.size(); ++c) {
    for (auto i : cert.classes[c].rows) {
      if (i >= n || owner[i] != SIZE_MAX) return false;
      owner[i] = c;
    }
  }
  if (std::find(owner.begin(), owner.end(), SIZE_MAX) != owner.end()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((same(i, j, xy) || same(i, j, yz)) && owner[i] != owner[j]) return false;
      if (owner[i] == owner[j] && !in_composition(i, j, xy, yz)) return false;
    }
  }

  bool all = true;
  bool any_witness = false;
  for (const auto& cv : cert.classes) {
    std::set<Key> xd, yd, zd;
    Rational mass;
    for (auto i : cv.rows) {
      xd.insert(project(sup[i].config, s.x));
      yd.insert(project(sup[i].config, s.y));
      zd.insert(project(sup[i].config, s.z));
      mass += sup[i].p;
    }
    if (!std::equal(xd.begin(), xd.end(), cv.x_domain.begin(), cv.x_domain.end()) ||
        !std::equal(yd.begin(), yd.end(), cv.y_domain.begin(), cv.y_domain.end()) ||
        !std::equal(zd.begin(), zd.end(), cv.z_domain.begin(), cv.z_domain.end())) {
      return false;
    }
    bool ok = true;
    for (const auto& yv : yd) {
      const PartialConfig py = assemble(s.y, yv);
      for (const auto& xv : xd) {
        const PartialConfig px = assemble(s.x, xv);
        std::optional<Rational> ref;
        for (const auto& zv : zd) {
          const auto val = cond_value(t, px, merge(py, assemble(s.z, zv)));
          if (!val) continue;
          if (!ref) {
            ref = val;
          } else if (*val != *ref) {
            ok = false;
          }
        }
        if (joint && ref) {
          Rational xm;
          Rational ym;
          for (auto i : cv.rows) {
            if (!py.matches(sup[i].config)) continue;
            ym += sup[i].p;
            if (px.matches(sup[i].config)) xm += sup[i].p;
          }
          if (xm / ym != *ref) ok = false;
        }
      }
    }
    if (ok != cv.ci_holds) return false;
    const bool witness = ok && (zd.size() >= 2 || cert.classes.size() == 1);
    if (witness != cv.witness) return false;
    all = all && ok;
    any_witness = any_witness || witness;
  }
  const bool holds = s.kind == StatementKind::kCWI ? any_witness : all;
  return holds == v.holds;
}

}  // namespace

bool replay(const Table& table, const Verdict& verdict) {
  switch (verdict.statement.kind) {
    case StatementKind::kCI:
    case StatementKind::kCSI:
    case StatementKind::kPCI:
      return replay_strong(table, verdict);
    case StatementKind::kCWI:
    case StatementKind::kWI:
      return replay_weak(table, verdict);
  }
  return false;
}

// --- enumeration ------------------------------------------------------------

namespace {

struct NamedSet {
  VarSet vars;
  std::vector<std::string> names;
};

std::vector<NamedSet> subsets_by_name(const Schema& schema, VarSet within) {
  std::vector<NamedSet> out;
  for_each_subset(within, [&](VarSet s) {
    auto names = schema.names(s);
    std::sort(names.begin(), names.end());
    out.push_back({s, std::move(names)});
  });
  std::sort(out.begin(), out.end(), [](const NamedSet& a, const NamedSet& b) { return a.names < b.names; });
  return out;
}

// Context values: odometer over the variables in name order, each in domain order.
std::vector<PartialConfig> contexts_over(const Schema& schema, const NamedSet& c) {
  std::vector<std::size_t> order;
  for (const auto& n : c.names) order.push_back(schema.require(n));
  std::vector<PartialConfig> out;
  Key cur(order.size(), 0);
  while (true) {
    std::vector<std::pair<std::string, std::string>> items;
    for (std::size_t k = 0; k < order.size(); ++k) {
      items.emplace_back(schema[order[k]].name, schema[order[k]].domain[cur[k]]);
    }
    out.push_back(PartialConfig::parse(schema, items));
    std::size_t k = order.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++cur[k] < schema[order[k]].domain.size()) {
        done = false;
        break;
      }
      cur[k] = 0;
    }
    if (done) break;
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(const Table& t, const EnumerationLimits& l, Enumeration& out) : t_(t), l_(l), out_(out) {}

  bool full() const { return out_.truncated; }

  void emit(const Statement& s) {
    if (out_.truncated) return;
    if (out_.verdicts.size() >= l_.max_statements) {
      out_.truncated = true;
      out_.truncation_reason = "statement limit of " + std::to_string(l_.max_statements) + " reached";
      return;
    }
    out_.verdicts.push_back(check(t_, s));
  }

  bool contexts_allowed(VarSet c) {
    if (t_.schema().domain_product(c) <= l_.max_contexts_per_set) return true;
    out_.truncated = true;
    out_.truncation_reason = "context count exceeds " + std::to_string(l_.max_contexts_per_set);
    return false;
  }

  bool readable(VarSet x, VarSet conditioning) const {
    return is_joint(t_) || (x == t_.targets() && conditioning == t_.givens());
  }

 private:
  const Table& t_;
  const EnumerationLimits& l_;
  Enumeration& out_;
};

}  // namespace

Enumeration enumerate_statements(const Table& table, std::vector<StatementKind> kinds,
                                 const EnumerationLimits& limits) {
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  Enumeration out;
  Enumerator e(table, limits, out);
  const Schema& schema = table.schema();
  const VarSet all = schema.all();
  const auto sets = subsets_by_name(schema, all);

  for (const auto kind : kinds) {
    for (const auto& xs : sets) {
      if (xs.vars.empty()) continue;
      for (const auto& zs : sets) {
        if (zs.vars.empty() || !zs.vars.disjoint(xs.vars)) continue;
        const VarSet rest = all - xs.vars - zs.vars;
        switch (kind) {
          case StatementKind::kCI:
          case StatementKind::kWI:
            if (e.readable(xs.vars, rest | zs.vars)) e.emit({kind, xs.vars, zs.vars, rest, {}});
            break;
          case StatementKind::kCSI:
            for (const auto& cs : subsets_by_name(schema, rest)) {
              if (cs.vars.empty() || cs.vars.size() > limits.max_context_variables) continue;
              if (!e.readable(xs.vars, rest | zs.vars) || !e.contexts_allowed(cs.vars)) continue;
              for (const auto& c : contexts_over(schema, cs)) {
                e.emit({kind, xs.vars, zs.vars, rest - cs.vars, c});
              }
            }
            break;
          case StatementKind::kPCI:
          case StatementKind::kCWI: {
            if (rest.empty() || rest.size() > limits.max_context_variables) break;
            if (!e.readable(xs.vars, rest | zs.vars) || !e.contexts_allowed(rest)) break;
            NamedSet ys{rest, schema.names(rest)};
            std::sort(ys.names.begin(), ys.names.end());
            for (const auto& c : contexts_over(schema, ys)) e.emit({kind, xs.vars, zs.vars, rest, c});
            break;
          }
        }
        if (e.full()) return out;
      }
    }
  }
  return out;
}

}  // namespace cwi
