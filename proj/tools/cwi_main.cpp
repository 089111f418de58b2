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

// cwi: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cwi/cwi.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

struct Failure {
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// "A,B,C" -> {A, B, C}; empty items are dropped.
std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

cwi_format format_for(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0 ? CWI_FORMAT_CSV : CWI_FORMAT_JSON;
}

void check_status(cwi_status s, const std::string& context) {
  if (s == CWI_OK) return;
  std::string msg = cwi_last_error();
  throw Failure{context.empty() ? msg : context + ": " + msg};
}

std::string take(char* s) {
  std::string out(s);
  cwi_string_free(s);
  return out;
}

// Owns the c_str() array behind a cwi_names view.
class NameList {
 public:
  explicit NameList(const std::vector<std::string>& items) : items_(items) {
    for (const auto& s : items_) ptrs_.push_back(s.c_str());
  }
  cwi_names view() const { return {ptrs_.data(), ptrs_.size()}; }

 private:
  std::vector<std::string> items_;
  std::vector<const char*> ptrs_;
};

using TablePtr = std::unique_ptr<cwi_table, decltype(&cwi_table_free)>;
using NestedPtr = std::unique_ptr<cwi_nested, decltype(&cwi_nested_free)>;

TablePtr load_table(const std::string& path, bool lenient) {
  const std::string text = read_input(path);
  cwi_table* t = nullptr;
  check_status(cwi_table_load(text.data(), text.size(), format_for(path), lenient ? 1 : 0, &t), path);
  return {t, &cwi_table_free};
}

NestedPtr load_nested(const std::string& path) {
  const std::string text = read_input(path);
  cwi_nested* n = nullptr;
  check_status(cwi_nested_load(text.data(), text.size(), format_for(path), &n), path);
  return {n, &cwi_nested_free};
}

// --- --pretty rendering --------------------------------------------------------

std::string join(const ordered_json& list, const char* sep = ",") {
  std::string out;
  for (const auto& e : list) {
    if (!out.empty()) out += sep;
    out += e.is_string() ? e.get<std::string>() : e.dump();
  }
  return out.empty() ? "∅" : out;
}

std::string assignment(const ordered_json& obj) {
  std::string out;
  for (const auto& [k, v] : obj.items()) {
    if (!out.empty()) out += ", ";
    out += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

std::string statement_text(const ordered_json& s) {
  std::string cond = join(s["Y"]);
  const std::string kind = s["kind"].get<std::string>();
  if (!s["context"].empty()) {
    cond = (kind == "CSI" && !s["Y"].empty() ? join(s["Y"]) + ", " : std::string()) + assignment(s["context"]);
  }
  return kind + "(" + join(s["X"]) + " ⊥ " + join(s["Z"]) + " | " + cond + ")";
}

void print_counterexample(std::ostream& os, const ordered_json& c, const char* indent) {
  os << indent << "x: " << assignment(c["x"]);
  if (!c["y"].empty()) os << "  y: " << assignment(c["y"]);
  os << "\n" << indent << "  " << assignment(c["first"]["z"]) << " -> " << c["first"]["value"].get<std::string>()
     << "\n" << indent << "  "
     << (c["against_marginal"].get<bool>() ? std::string("marginal") : assignment(c["second"]["z"])) << " -> "
     << c["second"]["value"].get<std::string>() << "\n";
}

void pretty_verdict(std::ostream& os, const ordered_json& v) {
  os << statement_text(v["statement"]) << ": " << (v["holds"].get<bool>() ? "holds" : "fails")
     << (v["vacuous"].get<bool>() ? " (vacuous)" : "") << "\n";
  const auto& c = v["certificate"];
  if (c.contains("counterexample")) {
    os << "  defined conditionings: " << c["defined_conditionings"] << "\n";
    if (!c["counterexample"].is_null()) {
      os << "  counterexample:\n";
      print_counterexample(os, c["counterexample"], "    ");
    }
    return;
  }
  os << "  support: " << join(c["support"], " ") << "\n";
  os << "  compositions commute: " << (c["commutes"].get<bool>() ? "yes" : "no") << "\n";
  if (!c["non_commuting"].is_null()) {
    os << "  pair only in " << c["non_commuting"]["only_in"].get<std::string>() << ": "
       << join(c["non_commuting"]["pair"], " ") << "\n";
  }
  std::size_t k = 0;
  for (const auto& cl : c["classes"]) {
    os << "  class " << ++k << ": " << join(cl["rows"], " ") << "\n";
    os << "    |V_X|=" << cl["V_X"].size() << " |V_Y|=" << cl["V_Y"].size() << " |V_Z|=" << cl["V_Z"].size()
       << "  class-CI " << (cl["class_ci"].get<bool>() ? "yes" : "no") << "  witness "
       << (cl["witness"].get<bool>() ? "yes" : "no") << "\n";
  }
}

void render_pretty(std::ostream& os, const ordered_json& doc) {
  const std::string verb = doc["verb"].get<std::string>();
  const auto& r = doc["result"];
  os << "cwi " << doc["version"].get<std::string>() << "  " << verb << "  " << doc["digest"].get<std::string>()
     << "\n\n";
  if (verb == "check") {
    pretty_verdict(os, r);
  } else if (verb == "validate") {
    os << r["kind"].get<std::string>() << " table, " << r["rows"] << " rows: "
       << (r["valid"].get<bool>() ? "valid" : "invalid") << "\n";
    for (const auto& i : r["issues"]) os << "  " << i["code"].get<std::string>() << ": " << i["message"].get<std::string>() << "\n";
  } else if (verb == "enumerate") {
    for (const auto& s : r["statements"]) {
      os << (s["holds"].get<bool>() ? "  holds  " : "  fails  ") << statement_text(s["statement"])
         << (s["vacuous"].get<bool>() ? "  (vacuous)" : "") << "\n";
    }
    os << r["holding"] << " of " << r["count"] << " hold" << (r["truncated"].get<bool>() ? " (truncated)" : "") << "\n";
  } else if (verb == "derive") {
    for (const auto& s : r["statements"]) os << "  " << s["text"].get<std::string>() << "\n";
    os << r["statement_count"] << " statements from " << r["premise_count"] << " premises\n";
  } else if (verb == "probe") {
    os << "premises " << r["premises"] << ", derived " << r["derived"] << "\n";
    os << "  rule       derived  repaired  literal-viol  repaired-viol\n";
    for (const auto& [rule, f] : r["rules"].items()) {
      char line[128];
      std::snprintf(line, sizeof line, "  %-9s %8zu %9zu %13zu %14zu\n", rule.c_str(), f["derived"].get<std::size_t>(),
                    f["repaired"].get<std::size_t>(), f["literal_violations"].get<std::size_t>(),
                    f["repaired_violations"].get<std::size_t>());
      os << line;
    }
  } else if (verb == "commute") {
    os << "nest " << join(r["X"]) << " and " << join(r["Z"]) << ": "
       << (r["commutes"].get<bool>() ? "orders agree" : "orders differ") << "\n";
    os << "WI given " << join(r["Y"]) << ": " << (r["weakly_independent"].get<bool>() ? "holds" : "fails")
       << (r["agree"].get<bool>() ? "" : "  ** DISAGREEMENT **") << "\n";
    if (!r["extension"].is_null()) os << "(joint form built with a uniform prior over the givens)\n";
  } else {
    os << r.dump(2) << "\n";
  }
}

// --- output ------------------------------------------------------------------

struct Output {
  std::string path;
  bool pretty = false;

  void emit(const std::string& report, bool is_report) const {
    std::string text = report;
    if (pretty && is_report) {
      std::ostringstream os;
      render_pretty(os, ordered_json::parse(report));
      text = os.str();
    }
    if (path.empty() || path == "-") {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{"cannot write '" + path + "'"};
    out << text;
  }
};

cwi_kind parse_kind(const std::string& k) {
  std::string t;
  for (char c : k) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "ci") return CWI_CI;
  if (t == "csi") return CWI_CSI;
  if (t == "pci") return CWI_PCI;
  if (t == "cwi") return CWI_CWI;
  if (t == "wi") return CWI_WI;
  throw Failure{"--kind: unknown kind '" + k + "'"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect contextual and weak independence in discrete probability tables"};
  app.set_version_flag("--version", std::string(cwi_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  app.add_flag("--pretty", out.pretty, "Human-readable rendering instead of JSON");
  app.add_option("--output,-o", out.path, "Write to this file instead of standard output");

  std::string input = "-";
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Table file, or - for standard input"); };

  auto* validate = app.add_subcommand("validate", "Report normalization problems");
  add_input(validate);

  std::string kind;
  std::string xs, zs, ys, ctx;
  bool assert_holds = false;
  auto* check = app.add_subcommand("check", "Test one independence statement");
  check->add_option("--kind", kind, "ci, csi, pci, cwi or wi")->required();
  check->add_option("--x", xs, "X variables")->required();
  check->add_option("--z", zs, "Z variables")->required();
  check->add_option("--y", ys, "Y variables");
  check->add_option("--context", ctx, "VAR=VAL,...");
  check->add_flag("--assert", assert_holds, "Exit 1 when the statement fails");
  add_input(check);

  std::string kinds;
  std::size_t max_context = 1;
  auto* enumerate = app.add_subcommand("enumerate", "Test every statement of the given kinds");
  enumerate->add_option("--kinds", kinds, "Comma-separated kinds")->required();
  enumerate->add_option("--max-context", max_context, "Most context variables per CSI/PCI/CWI statement");
  add_input(enumerate);

  std::string premises;
  std::string universe;
  auto* derive = app.add_subcommand("derive", "Close a premise set under the inference rules");
  derive->add_option("--premises", premises, "Premise JSON file, or -")->required();
  derive->add_option("--universe", universe, "Universe variables")->required();

  cwi_probe_params probe_params{3, 2, 100, 0, {nullptr, 0}};
  std::string rules;
  auto* probe = app.add_subcommand("probe", "Check the rules against random tables");
  probe->add_option("--vars", probe_params.vars, "Variables per table");
  probe->add_option("--domain-size", probe_params.domain_size, "Values per variable");
  probe->add_option("--trials", probe_params.trials, "Number of random tables");
  probe->add_option("--seed", probe_params.seed, "Generator seed");
  probe->add_option("--rules", rules, "WI1,WI2,WI3,CIWI1,CIWI2");

  std::string by;
  std::string as_name;
  auto* nest = app.add_subcommand("nest", "Coarsen attributes into one nested attribute");
  nest->add_option("--by", by, "Attributes to nest")->required();
  nest->add_option("--as", as_name, "Name of the nested attribute")->required();
  add_input(nest);

  std::string attr;
  auto* unnest = app.add_subcommand("unnest", "Expand a nested attribute");
  unnest->add_option("--attr", attr, "Nested attribute")->required();
  add_input(unnest);

  auto* commute = app.add_subcommand("commute", "Compare both nesting orders of X and Z");
  commute->add_option("--x", xs, "X variables")->required();
  commute->add_option("--z", zs, "Z variables")->required();
  add_input(commute);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cwi: error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) {
      auto t = load_table(input, true);
      char* report = nullptr;
      check_status(cwi_validate(t.get(), &report), "");
      out.emit(take(report), true);
    } else if (check->parsed()) {
      const cwi_kind k = parse_kind(kind);
      auto t = load_table(input, false);
      NameList x(split(xs)), z(split(zs)), y(split(ys)), c(split(ctx));
      const cwi_statement s{k, x.view(), z.view(), y.view(), c.view()};
      int holds = 0;
      char* report = nullptr;
      check_status(cwi_check(t.get(), &s, &holds, &report), "check");
      out.emit(take(report), true);
      if (assert_holds && holds == 0) return kExitFalse;
    } else if (enumerate->parsed()) {
      std::vector<cwi_kind> ks;
      for (const auto& k : split(kinds)) ks.push_back(parse_kind(k));
      auto t = load_table(input, false);
      char* report = nullptr;
      check_status(cwi_enumerate(t.get(), ks.data(), ks.size(), max_context, &report), "enumerate");
      out.emit(take(report), true);
    } else if (derive->parsed()) {
      const std::string text = read_input(premises);
      NameList u(split(universe));
      char* report = nullptr;
      check_status(cwi_derive(text.data(), text.size(), u.view(), &report), "derive");
      out.emit(take(report), true);
    } else if (probe->parsed()) {
      NameList r(split(rules));
      probe_params.rules = r.view();
      char* report = nullptr;
      check_status(cwi_probe(&probe_params, &report), "probe");
      out.emit(take(report), true);
    } else if (nest->parsed()) {
      auto n = load_nested(input);
      NameList b(split(by));
      cwi_nested* result = nullptr;
      check_status(cwi_nest(n.get(), as_name.c_str(), b.view(), &result), "nest");
      NestedPtr owned(result, &cwi_nested_free);
      char* text = nullptr;
      check_status(cwi_nested_serialize(owned.get(), &text), "nest");
      out.emit(take(text), false);
    } else if (unnest->parsed()) {
      auto n = load_nested(input);
      cwi_nested* result = nullptr;
      check_status(cwi_unnest(n.get(), attr.c_str(), &result), "unnest");
      NestedPtr owned(result, &cwi_nested_free);
      char* text = nullptr;
      check_status(cwi_nested_serialize(owned.get(), &text), "unnest");
      out.emit(take(text), false);
    } else if (commute->parsed()) {
      auto t = load_table(input, false);
      NameList x(split(xs)), z(split(zs));
      int commutes = 0;
      char* report = nullptr;
      check_status(cwi_commute(t.get(), x.view(), z.view(), &commutes, &report), "commute");
      out.emit(take(report), true);
    }
  } catch (const Failure& f) {
    std::cerr << "cwi: error: " << f.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cwi: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
