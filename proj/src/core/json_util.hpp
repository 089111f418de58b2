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

#include <string>
#include <vector>

#include "cwi/error.hpp"
#include "cwi/rational.hpp"
#include "json.hpp"

namespace cwi::detail {

using ordered_json = nlohmann::ordered_json;

/// Probabilities may be "n/d" strings, decimal strings, or JSON numbers. A
/// number is re-read from its shortest round-trip text, so 0.1 stays 1/10.
inline Rational rational_from_json(const nlohmann::json& v, const char* what) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational::parse(std::to_string(v.get<long long>()));
  if (v.is_number_unsigned()) return Rational::parse(std::to_string(v.get<unsigned long long>()));
  if (v.is_number_float()) return Rational::parse(v.dump());
  fail(ErrorCode::kParse, std::string(what) + " must be a number or a fraction string");
}

inline std::vector<std::string> string_list(const nlohmann::json& v, const char* what) {
  if (!v.is_array()) fail(ErrorCode::kParse, std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (e.is_string()) {
      out.push_back(e.get<std::string>());
    } else if (e.is_number()) {
      out.push_back(e.dump());
    } else {
      fail(ErrorCode::kParse, std::string(what) + " must be an array of strings");
    }
  }
  return out;
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

std::string sha256_hex(std::string_view data);

}  // namespace cwi::detail

namespace cwi {
struct NestedTable;
namespace detail {
ordered_json nested_table_json(const NestedTable& t);
}  // namespace detail

}  // namespace cwi
