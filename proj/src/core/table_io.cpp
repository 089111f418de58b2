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

#include "cwi/table_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <sstream>

#include "cwi/error.hpp"
#include "json_util.hpp"

namespace cwi {
namespace detail {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kInvalidArgument, "sha256 failed");
  }
  std::string out;
  out.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

}  // namespace detail

namespace {

using detail::ordered_json;

const nlohmann::json& member(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::kParse, std::string("missing field '") + key + "'");
  return *it;
}

Table finish(Table table, LoadMode mode) {
  if (mode == LoadMode::kStrict) {
    const auto issues = validate(table, ValidationMode::kStrict);
    if (!issues.empty()) {
      std::string msg = issues.front().message;
      if (issues.size() > 1) msg += " (and " + std::to_string(issues.size() - 1) + " more)";
      fail(ErrorCode::kNormalization, msg);
    }
  }
  return table;
}

Table load_json(std::string_view text, LoadMode mode) {
  const nlohmann::json doc = detail::parse_json(text);
  if (!doc.is_object()) fail(ErrorCode::kParse, "table document must be a JSON object");

  std::vector<Variable> vars;
  const auto& jvars = member(doc, "variables");
  if (!jvars.is_array()) fail(ErrorCode::kParse, "'variables' must be an array");
  for (const auto& jv : jvars) {
    if (!jv.is_object() || !member(jv, "name").is_string()) {
      fail(ErrorCode::kParse, "each variable needs a string 'name'");
    }
    vars.push_back({jv["name"].get<std::string>(), detail::string_list(member(jv, "domain"), "domain")});
  }
  auto schema = std::make_shared<const Schema>(std::move(vars));

  TableKind kind = TableKind::kJoint;
  const std::string kind_text = doc.value("kind", std::string("joint"));
  if (kind_text == "joint") {
    kind = TableKind::kJoint;
  } else if (kind_text == "conditional") {
    kind = TableKind::kConditional;
  } else if (kind_text == "raw") {
    kind = TableKind::kRaw;
  } else {
    fail(ErrorCode::kParse, "unknown table kind '" + kind_text + "'");
  }
  VarSet targets;
  VarSet givens;
  if (kind != TableKind::kJoint) {
    targets = schema->varset(detail::string_list(member(doc, "targets"), "targets"));
    givens = schema->varset(detail::string_list(member(doc, "givens"), "givens"));
  }

  std::vector<Row> rows;
  const auto& jrows = member(doc, "rows");
  if (!jrows.is_array()) fail(ErrorCode::kParse, "'rows' must be an array");
  for (const auto& jr : jrows) {
    if (!jr.is_object()) fail(ErrorCode::kParse, "each row must be an object");
    const auto values = detail::string_list(member(jr, "config"), "config");
    if (values.size() != schema->size()) {
      fail(ErrorCode::kSchema, "row config has " + std::to_string(values.size()) +
                                   " values, schema has " + std::to_string(schema->size()));
    }
    Row row;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto idx = (*schema)[i].value_index(values[i]);
      if (!idx) {
        fail(ErrorCode::kSchema,
             "value '" + values[i] + "' is outside the domain of '" + (*schema)[i].name + "'");
      }
      row.config.push_back(*idx);
    }
    row.p = detail::rational_from_json(member(jr, "p"), "p");
    if (const auto it = jr.find("label"); it != jr.end()) {
      if (!it->is_string()) fail(ErrorCode::kParse, "'label' must be a string");
      row.label = it->get<std::string>();
    }
    rows.push_back(std::move(row));
  }
  return finish(Table::make(std::move(schema), kind, targets, givens, std::move(rows)), mode);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) fail(ErrorCode::kParse, "unterminated quote in CSV line");
  out.push_back(cur);
  for (auto& f : out) {
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
  }
  return out;
}

Table load_csv(std::string_view text, LoadMode mode) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    records.push_back(split_csv_line(line));
  }
  if (records.empty()) fail(ErrorCode::kParse, "empty CSV document");
  const auto& header = records.front();
  if (header.size() < 2 || header.back() != "p") {
    fail(ErrorCode::kParse, "CSV header must list the variables followed by 'p'");
  }
  const std::size_t n = header.size() - 1;
  std::vector<Variable> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i].name = header[i];
  std::vector<Row> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      fail(ErrorCode::kParse, "CSV line " + std::to_string(r + 1) + " has " + std::to_string(rec.size()) +
                                  " fields, expected " + std::to_string(header.size()));
    }
    Row row;
    for (std::size_t i = 0; i < n; ++i) {
      auto idx = vars[i].value_index(rec[i]);
      if (!idx) {
        vars[i].domain.push_back(rec[i]);
        idx = static_cast<std::uint32_t>(vars[i].domain.size() - 1);
      }
      row.config.push_back(*idx);
    }
    row.p = Rational::parse(rec[n]);
    rows.push_back(std::move(row));
  }
  for (auto& v : vars) {
    if (v.domain.empty()) fail(ErrorCode::kSchema, "variable '" + v.name + "' never takes a value");
  }
  auto schema = std::make_shared<const Schema>(std::move(vars));
  return finish(Table::joint(std::move(schema), std::move(rows)), mode);
}

ordered_json names_json(const Schema& schema, VarSet vars) {
  ordered_json a = ordered_json::array();
  for (const auto& n : schema.names(vars)) a.push_back(n);
  return a;
}

}  // namespace

Table load_table(std::string_view text, TableFormat format, LoadMode mode) {
  return format == TableFormat::kCsv ? load_csv(text, mode) : load_json(text, mode);
}

std::string serialize_table(const Table& table, bool canonical) {
  const Schema& schema = table.schema();
  ordered_json doc;
  ordered_json vars = ordered_json::array();
  for (const auto& v : schema.variables()) {
    vars.push_back({{"name", v.name}, {"domain", v.domain}});
  }
  doc["variables"] = std::move(vars);
  doc["kind"] = std::string(to_string(table.kind()));
  if (table.kind() != TableKind::kJoint) {
    doc["targets"] = names_json(schema, table.targets());
    doc["givens"] = names_json(schema, table.givens());
  }
  std::vector<const Row*> rows;
  for (const auto& r : table.rows()) rows.push_back(&r);
  if (canonical) {
    std::sort(rows.begin(), rows.end(), [](const Row* a, const Row* b) { return a->config < b->config; });
  }
  ordered_json jrows = ordered_json::array();
  for (const Row* r : rows) {
    ordered_json cfg = ordered_json::array();
    for (std::size_t i = 0; i < r->config.size(); ++i) cfg.push_back(schema[i].domain[r->config[i]]);
    ordered_json jr;
    jr["config"] = std::move(cfg);
    jr["p"] = r->p.str();
    if (!canonical) jr["label"] = r->label;
    jrows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(jrows);
  return doc.dump(2) + "\n";
}

std::string table_digest(const Table& table) {
  return "sha256:" + detail::sha256_hex(serialize_table(table));
}

}  // namespace cwi
