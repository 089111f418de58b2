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
#include <string_view>

#include "cwi/table.hpp"

namespace cwi {

enum class TableFormat { kJson, kCsv };

/// Strict loading additionally rejects tables that violate their kind's
/// normalization invariant (Error(kNormalization)).
enum class LoadMode { kStrict, kLenient };

/// JSON document:
///   {"variables":[{"name":..,"domain":[..]}..], "kind":"joint"|"conditional"|"raw",
///    "targets":[..], "givens":[..], "rows":[{"config":[..], "p":"n/d" or decimal, "label":..}..]}
/// CSV (joint only): header of variable names followed by `p`; domains are
/// the values in order of first appearance.
Table load_table(std::string_view text, TableFormat format, LoadMode mode = LoadMode::kStrict);

/// JSON document accepted by load_table. Canonical output sorts rows by
/// configuration and omits labels.
std::string serialize_table(const Table& table, bool canonical = false);

/// "sha256:<hex>" of serialize_table(table).
std::string table_digest(const Table& table);

}  // namespace cwi
