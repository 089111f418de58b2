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

#include "cwi/cwi.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "cwi/axioms.hpp"
#include "cwi/error.hpp"
#include "cwi/granular.hpp"
#include "cwi/independence.hpp"
#include "cwi/report.hpp"
#include "cwi/table.hpp"
#include "cwi/table_io.hpp"

struct cwi_table {
  cwi::Table table;
};

struct cwi_nested {
  cwi::NestedTable table;
};

namespace {

thread_local std::string g_last_error;

cwi_status status_of(cwi::ErrorCode c) {
  switch (c) {
    case cwi::ErrorCode::kParse: return CWI_E_PARSE;
    case cwi::ErrorCode::kSchema: return CWI_E_SCHEMA;
    case cwi::ErrorCode::kNormalization: return CWI_E_NORMALIZATION;
    case cwi::ErrorCode::kInvalidArgument: return CWI_E_INVALID_ARGUMENT;
    case cwi::ErrorCode::kLimit: return CWI_E_LIMIT;
  }
  return CWI_E_INTERNAL;
}

template <typename Fn>
cwi_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return CWI_OK;
  } catch (const cwi::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CWI_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CWI_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) cwi::fail(cwi::ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> names(const cwi_names& n) {
  require(n.count == 0 || n.items != nullptr, "name list is null");
  std::vector<std::string> out;
  for (size_t i = 0; i < n.count; ++i) {
    require(n.items[i] != nullptr, "name list holds a null entry");
    out.emplace_back(n.items[i]);
  }
  return out;
}

cwi::PartialConfig context(const cwi::Schema& schema, const cwi_names& n) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const auto& item : names(n)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      cwi::fail(cwi::ErrorCode::kInvalidArgument, "context item '" + item + "' is not VAR=VALUE");
    }
    items.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return cwi::PartialConfig::parse(schema, items);
}

cwi::StatementKind kind_of(cwi_kind k) {
  switch (k) {
    case CWI_CI: return cwi::StatementKind::kCI;
    case CWI_CSI: return cwi::StatementKind::kCSI;
    case CWI_PCI: return cwi::StatementKind::kPCI;
    case CWI_CWI: return cwi::StatementKind::kCWI;
    case CWI_WI: return cwi::StatementKind::kWI;
  }
  cwi::fail(cwi::ErrorCode::kInvalidArgument, "unknown statement kind");
}

cwi::Statement statement(const cwi::Schema& schema, const cwi_statement& s) {
  cwi::Statement st;
  st.kind = kind_of(s.kind);
  st.x = schema.varset(names(s.x));
  st.z = schema.varset(names(s.z));
  st.context = context(schema, s.context);
  const cwi::VarSet y = schema.varset(names(s.y));
  switch (st.kind) {
    case cwi::StatementKind::kCI:
    case cwi::StatementKind::kWI:
      require(st.context.empty(), "this kind takes no context");
      st.y = y;
      break;
    case cwi::StatementKind::kCSI:
      require(!st.context.empty(), "CSI needs a context");
      st.y = y;
      break;
    case cwi::StatementKind::kPCI:
    case cwi::StatementKind::kCWI:
      require(!st.context.empty(), "this kind needs the fixed Y value as a context");
      require(y.empty() || y == st.context.vars, "Y must name exactly the context variables");
      st.y = st.context.vars;
      break;
  }
  return st;
}

cwi::TableFormat format_of(cwi_format f) { return f == CWI_FORMAT_CSV ? cwi::TableFormat::kCsv : cwi::TableFormat::kJson; }

}  // namespace

extern "C" {

const char* cwi_version(void) {
  static const std::string v = cwi::version_string();
  return v.c_str();
}

const char* cwi_last_error(void) { return g_last_error.c_str(); }

void cwi_string_free(char* s) { std::free(s); }

cwi_status cwi_table_load(const char* text, size_t len, cwi_format format, int lenient, cwi_table** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto t = cwi::load_table(std::string_view(text, len), format_of(format),
                             lenient != 0 ? cwi::LoadMode::kLenient : cwi::LoadMode::kStrict);
    *out = new cwi_table{std::move(t)};
  });
}

void cwi_table_free(cwi_table* t) { delete t; }

cwi_status cwi_table_serialize(const cwi_table* t, int canonical, char** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    *out = dup(cwi::serialize_table(t->table, canonical != 0));
  });
}

cwi_status cwi_table_digest(const cwi_table* t, char** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    *out = dup(cwi::table_digest(t->table));
  });
}

cwi_status cwi_validate(const cwi_table* t, char** report) {
  return guarded([&] {
    require(t != nullptr && report != nullptr, "null argument");
    *report = dup(cwi::validation_report(t->table, cwi::validate(t->table, cwi::ValidationMode::kStrict)));
  });
}

cwi_status cwi_check(const cwi_table* t, const cwi_statement* s, int* holds, char** report) {
  return guarded([&] {
    require(t != nullptr && s != nullptr, "null argument");
    require(holds != nullptr || report != nullptr, "nowhere to put the verdict");
    const auto v = cwi::check(t->table, statement(t->table.schema(), *s));
    if (holds != nullptr) *holds = v.holds ? 1 : 0;
    if (report != nullptr) *report = dup(cwi::check_report(t->table, v));
  });
}

cwi_status cwi_enumerate(const cwi_table* t, const cwi_kind* kinds, size_t kind_count, size_t max_context,
                         char** report) {
  return guarded([&] {
    require(t != nullptr && report != nullptr, "null argument");
    require(kind_count == 0 || kinds != nullptr, "kind list is null");
    require(kind_count > 0, "at least one kind is needed");
    std::vector<cwi::StatementKind> ks;
    for (size_t i = 0; i < kind_count; ++i) ks.push_back(kind_of(kinds[i]));
    cwi::EnumerationLimits limits;
    limits.max_context_variables = max_context;
    *report = dup(cwi::enumeration_report(t->table, cwi::enumerate_statements(t->table, ks, limits)));
  });
}

cwi_status cwi_derive(const char* premises_json, size_t len, cwi_names universe, char** report) {
  return guarded([&] {
    require(premises_json != nullptr && report != nullptr, "null argument");
    auto u = std::make_shared<cwi::Universe>();
    u->names = names(universe);
    require(!u->names.empty(), "the universe is empty");
    const auto premises = cwi::load_premises(std::string_view(premises_json, len), *u);
    *report = dup(cwi::closure_report(cwi::closure(u, premises)));
  });
}

cwi_status cwi_probe(const cwi_probe_params* params, char** report) {
  return guarded([&] {
    require(params != nullptr && report != nullptr, "null argument");
    cwi::ProbeParams p;
    p.vars = params->vars;
    p.domain_size = params->domain_size;
    p.trials = params->trials;
    p.seed = params->seed;
    require(p.vars >= 1 && p.vars <= 6, "--vars must be between 1 and 6");
    require(p.domain_size >= 1 && p.domain_size <= 4, "--domain-size must be between 1 and 4");
    const auto rules = names(params->rules);
    if (!rules.empty()) {
      p.rules.clear();
      for (const auto& r : rules) {
        const auto rule = cwi::parse_rule(r);
        if (!rule) cwi::fail(cwi::ErrorCode::kInvalidArgument, "unknown rule '" + r + "'");
        p.rules.insert(*rule);
      }
    }
    *report = dup(cwi::probe_report(cwi::soundness_probe(p)));
  });
}

cwi_status cwi_commute(const cwi_table* t, cwi_names x, cwi_names z, int* commutes, char** report) {
  return guarded([&] {
    require(t != nullptr, "null argument");
    require(commutes != nullptr || report != nullptr, "nowhere to put the verdict");
    const cwi::Schema& schema = t->table.schema();
    const cwi::VarSet xs = schema.varset(names(x));
    const cwi::VarSet zs = schema.varset(names(z));
    const bool extended = t->table.kind() != cwi::TableKind::kJoint;
    const cwi::Table joint = cwi::uniform_prior_extension(t->table);
    const auto r = cwi::wi_nest_equivalence(joint, xs, zs, schema.all() - xs - zs);
    if (commutes != nullptr) *commutes = r.nest.commutes ? 1 : 0;
    if (report != nullptr) *report = dup(cwi::commute_report(t->table, r, extended));
  });
}

cwi_status cwi_nested_load(const char* text, size_t len, cwi_format format, cwi_nested** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new cwi_nested{cwi::load_nested_or_table(std::string_view(text, len), format_of(format))};
  });
}

void cwi_nested_free(cwi_nested* n) { delete n; }

cwi_status cwi_nest(const cwi_nested* n, const char* name, cwi_names by, cwi_nested** out) {
  return guarded([&] {
    require(n != nullptr && name != nullptr && out != nullptr, "null argument");
    *out = new cwi_nested{cwi::nest(n->table, name, names(by))};
  });
}

cwi_status cwi_unnest(const cwi_nested* n, const char* name, cwi_nested** out) {
  return guarded([&] {
    require(n != nullptr && name != nullptr && out != nullptr, "null argument");
    *out = new cwi_nested{cwi::unnest(n->table, name)};
  });
}

cwi_status cwi_nested_serialize(const cwi_nested* n, char** out) {
  return guarded([&] {
    require(n != nullptr && out != nullptr, "null argument");
    *out = dup(n->table.flat() ? cwi::serialize_table(cwi::to_table(n->table), true)
                               : cwi::serialize_nested(n->table));
  });
}

int cwi_nested_equal(const cwi_nested* a, const cwi_nested* b) {
  if (a == nullptr || b == nullptr) return 0;
  return cwi::canonical_equal(a->table, b->table) ? 1 : 0;
}

}  // extern "C"
