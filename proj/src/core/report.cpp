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

#include "cwi/report.hpp"

#include <set>

#include "cwi/error.hpp"
#include "cwi/table_io.hpp"
#include "json_util.hpp"

#ifndef CWI_VERSION
#define CWI_VERSION "0.0.0"
#endif

namespace cwi {
namespace {

using detail::ordered_json;
using Key = std::vector<std::uint32_t>;

ordered_json names_json(const Schema& s, VarSet vars) { return s.names(vars); }

ordered_json values_json(const Schema& s, VarSet vars, const Key& values) {
  ordered_json out = ordered_json::array();
  std::size_t k = 0;
  for (auto i : vars.indices()) {
    const auto v = values[k++];
    if (v == PartialConfig::kNoValue) {
      out.push_back(nullptr);
    } else {
      out.push_back(s[i].domain[v]);
    }
  }
  return out;
}

ordered_json assignment_json(const Schema& s, VarSet vars, const Key& values) {
  ordered_json out = ordered_json::object();
  const auto vs = values_json(s, vars, values);
  std::size_t k = 0;
  for (auto i : vars.indices()) out[s[i].name] = vs[k++];
  return out;
}

ordered_json statement_json(const Schema& s, const Statement& st) {
  ordered_json j;
  j["kind"] = std::string(to_string(st.kind));
  j["X"] = names_json(s, st.x);
  j["Z"] = names_json(s, st.z);
  j["Y"] = names_json(s, st.y);
  j["context"] = assignment_json(s, st.context.vars, st.context.values);
  return j;
}

ordered_json counterexample_json(const Schema& s, const Statement& st, const Counterexample& c) {
  const VarSet y = st.kind == StatementKind::kPCI ? VarSet{} : st.y;
  ordered_json j;
  j["x"] = assignment_json(s, st.x, c.x);
  j["y"] = assignment_json(s, y, c.y);
  j["first"] = {{"z", assignment_json(s, st.z, c.first.z)}, {"value", c.first.value.str()}};
  if (c.against_marginal) {
    j["second"] = {{"z", nullptr}, {"value", c.second.value.str()}};
  } else {
    j["second"] = {{"z", assignment_json(s, st.z, c.second.z)}, {"value", c.second.value.str()}};
  }
  j["against_marginal"] = c.against_marginal;
  return j;
}

ordered_json domain_json(const Schema& s, VarSet vars, const std::vector<Key>& dom) {
  ordered_json out = ordered_json::array();
  for (const auto& v : dom) out.push_back(values_json(s, vars, v));
  return out;
}

bool weak(StatementKind k) { return k == StatementKind::kCWI || k == StatementKind::kWI; }

ordered_json verdict_json(const Schema& s, const Verdict& v) {
  ordered_json j;
  j["statement"] = statement_json(s, v.statement);
  j["holds"] = v.holds;
  j["vacuous"] = v.vacuous;
  const Certificate& c = v.certificate;
  ordered_json cert;
  if (!weak(v.statement.kind)) {
    j["vacuous_count"] = v.vacuous_count;
    cert["defined_conditionings"] = c.defined_conditionings;
    cert["counterexample"] =
        c.counterexample ? counterexample_json(s, v.statement, *c.counterexample) : ordered_json(nullptr);
  } else {
    cert["support"] = c.support_labels;
    cert["commutes"] = c.commutes;
    if (c.non_commuting) {
      cert["non_commuting"] = {{"pair", {c.support_labels[c.non_commuting->first],
                                         c.support_labels[c.non_commuting->second]}},
                               {"only_in", c.non_commuting_in_xy_first ? "XY∘YZ" : "YZ∘XY"}};
    } else {
      cert["non_commuting"] = nullptr;
    }
    ordered_json classes = ordered_json::array();
    for (const auto& cv : c.classes) {
      ordered_json jc;
      ordered_json rows = ordered_json::array();
      for (auto i : cv.rows) rows.push_back(c.support_labels[i]);
      jc["rows"] = std::move(rows);
      jc["V_X"] = domain_json(s, v.statement.x, cv.x_domain);
      jc["V_Y"] = domain_json(s, v.statement.y, cv.y_domain);
      jc["V_Z"] = domain_json(s, v.statement.z, cv.z_domain);
      jc["class_ci"] = cv.ci_holds;
      jc["witness"] = cv.witness;
      jc["failure"] = cv.failure ? counterexample_json(s, v.statement, *cv.failure) : ordered_json(nullptr);
      classes.push_back(std::move(jc));
    }
    cert["classes"] = std::move(classes);
  }
  j["certificate"] = std::move(cert);
  return j;
}

std::string envelope(std::string_view verb, const std::string& digest, ordered_json result) {
  ordered_json doc;
  doc["tool"] = "cwi";
  doc["version"] = version_string();
  doc["verb"] = std::string(verb);
  doc["digest"] = digest;
  doc["result"] = std::move(result);
  return doc.dump(2) + "\n";
}

ordered_json axiom_json(const Universe& u, const AxiomStatement& st) {
  ordered_json j;
  j["kind"] = std::string(to_string(st.kind));
  j["X"] = u.names_of(st.x);
  j["Y"] = u.names_of(st.y);
  j["Z"] = u.names_of(st.z(u));
  j["text"] = describe(u, st);
  return j;
}

}  // namespace

std::string version_string() { return CWI_VERSION; }

std::string validation_report(const Table& table, const std::vector<ValidationIssue>& issues) {
  ordered_json r;
  r["kind"] = std::string(to_string(table.kind()));
  r["rows"] = table.rows().size();
  r["valid"] = issues.empty();
  ordered_json js = ordered_json::array();
  for (const auto& i : issues) {
    ordered_json ji;
    ji["code"] = i.code;
    ji["message"] = i.message;
    ji["at"] = i.at ? assignment_json(table.schema(), i.at->vars, i.at->values) : ordered_json(nullptr);
    js.push_back(std::move(ji));
  }
  r["issues"] = std::move(js);
  return envelope("validate", table_digest(table), std::move(r));
}

std::string check_report(const Table& table, const Verdict& verdict) {
  return envelope("check", table_digest(table), verdict_json(table.schema(), verdict));
}

std::string enumeration_report(const Table& table, const Enumeration& e) {
  ordered_json r;
  r["count"] = e.verdicts.size();
  std::size_t holding = 0;
  for (const auto& v : e.verdicts) holding += v.holds ? 1 : 0;
  r["holding"] = holding;
  r["truncated"] = e.truncated;
  r["truncation_reason"] = e.truncated ? ordered_json(e.truncation_reason) : ordered_json(nullptr);
  ordered_json list = ordered_json::array();
  for (const auto& v : e.verdicts) {
    ordered_json j;
    j["statement"] = statement_json(table.schema(), v.statement);
    j["holds"] = v.holds;
    j["vacuous"] = v.vacuous;
    list.push_back(std::move(j));
  }
  r["statements"] = std::move(list);
  return envelope("enumerate", table_digest(table), std::move(r));
}

std::string closure_report(const Closure& c) {
  const Universe& u = *c.universe;
  ordered_json r;
  r["universe"] = u.names;
  ordered_json premises = ordered_json::array();
  for (std::size_t i = 0; i < c.premise_count; ++i) premises.push_back(axiom_json(u, c.statements[i]));
  ordered_json statements = ordered_json::array();
  for (const auto& s : c.statements) statements.push_back(axiom_json(u, s));
  ordered_json traces = ordered_json::array();
  for (const auto& t : c.traces) {
    ordered_json jt;
    jt["derived"] = axiom_json(u, t.derived.statement);
    jt["literal"] = describe_sets(u, t.derived.statement.kind, t.derived.statement.x, t.derived.literal_z,
                                  t.derived.statement.y);
    jt["rule"] = std::string(to_string(t.rule));
    ordered_json ps = ordered_json::array();
    for (const auto& p : t.premises) ps.push_back(describe(u, p));
    jt["premises"] = std::move(ps);
    ordered_json in = ordered_json::object();
    switch (t.rule) {
      case Rule::kWI1:
        in["X"] = u.names_of(t.instantiation.x);
        in["Y"] = u.names_of(t.instantiation.y);
        break;
      case Rule::kWI2:
        in["W"] = u.names_of(t.instantiation.w);
        in["conclusion"] = t.instantiation.branch + 1;
        break;
      case Rule::kWI3:
        in["W"] = u.names_of(t.instantiation.w);
        break;
      case Rule::kCIWI1:
        break;
      case Rule::kCIWI2:
        in["Z1"] = u.names_of(t.instantiation.z1);
        in["Z2"] = u.names_of(t.instantiation.z2);
        break;
    }
    jt["instantiation"] = std::move(in);
    traces.push_back(std::move(jt));
  }
  r["premise_count"] = c.premise_count;
  r["statement_count"] = c.statements.size();
  r["premises"] = std::move(premises);
  r["statements"] = std::move(statements);
  r["traces"] = std::move(traces);
  return envelope("derive", "sha256:" + detail::sha256_hex(r["premises"].dump()), std::move(r));
}

std::string probe_report(const ProbeReport& p) {
  ordered_json params;
  params["vars"] = p.params.vars;
  params["domain_size"] = p.params.domain_size;
  params["trials"] = p.params.trials;
  params["seed"] = p.params.seed;
  ordered_json rules = ordered_json::array();
  for (auto r : p.params.rules) rules.push_back(std::string(to_string(r)));
  params["rules"] = std::move(rules);

  ordered_json r;
  r["params"] = params;
  r["premises"] = p.premises_total;
  r["derived"] = p.derived_total;
  ordered_json findings = ordered_json::object();
  for (const auto& [rule, f] : p.rules) {
    ordered_json jf;
    jf["derived"] = f.derived;
    jf["repaired"] = f.repaired;
    jf["literal_violations"] = f.literal_violations;
    jf["repaired_violations"] = f.repaired_violations;
    ordered_json ex = ordered_json::array();
    for (const auto& v : f.examples) {
      ex.push_back({{"trial", v.trial}, {"reading", v.reading}, {"statement", v.statement}, {"premises", v.premises}});
    }
    jf["examples"] = std::move(ex);
    findings[std::string(to_string(rule))] = std::move(jf);
  }
  r["rules"] = std::move(findings);
  return envelope("probe", "sha256:" + detail::sha256_hex(params.dump()), std::move(r));
}

std::string commute_report(const Table& input, const WiNestReport& w, bool extended) {
  const Schema& s = input.schema();
  ordered_json r;
  r["X"] = names_json(s, w.wi.statement.x);
  r["Z"] = names_json(s, w.wi.statement.z);
  r["Y"] = names_json(s, w.wi.statement.y);
  r["extension"] = extended ? ordered_json("uniform-prior") : ordered_json(nullptr);
  r["commutes"] = w.nest.commutes;
  r["weakly_independent"] = w.wi.holds;
  r["agree"] = w.agree;
  r["wi"] = verdict_json(s, w.wi);
  r["x_then_z"] = detail::nested_table_json(w.nest.x_then_z);
  r["z_then_x"] = detail::nested_table_json(w.nest.z_then_x);
  return envelope("commute", table_digest(input), std::move(r));
}

std::vector<AxiomStatement> load_premises(std::string_view text, const Universe& universe) {
  const auto doc = detail::parse_json(text);
  if (!doc.is_array()) fail(ErrorCode::kParse, "premises must be a JSON array");
  const std::set<std::string> names(universe.names.begin(), universe.names.end());
  if (names.size() != universe.names.size()) fail(ErrorCode::kInvalidArgument, "universe repeats a variable");
  std::vector<AxiomStatement> out;
  for (const auto& j : doc) {
    if (!j.is_object()) fail(ErrorCode::kParse, "each premise must be an object");
    const auto kind = j.value("kind", std::string());
    AxiomStatement s;
    if (kind == "CI") {
      s.kind = AxiomKind::kCI;
    } else if (kind == "WI") {
      s.kind = AxiomKind::kWI;
    } else {
      fail(ErrorCode::kParse, "premise kind must be \"CI\" or \"WI\"");
    }
    if (!j.contains("X") || !j.contains("Y")) fail(ErrorCode::kParse, "each premise needs 'X' and 'Y'");
    s.x = universe.varset(detail::string_list(j["X"], "X"));
    s.y = universe.varset(detail::string_list(j["Y"], "Y"));
    if (j.contains("universe")) {
      const auto u = detail::string_list(j["universe"], "universe");
      if (std::set<std::string>(u.begin(), u.end()) != names) {
        fail(ErrorCode::kInvalidArgument, "premise universe differs from --universe");
      }
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace cwi
