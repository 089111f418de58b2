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

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwi/axioms.hpp"
#include "cwi/granular.hpp"
#include "cwi/independence.hpp"
#include "cwi/table.hpp"

namespace cwi {

/// Every report is an envelope
///   {"tool":"cwi","version":..,"verb":..,"digest":"sha256:..","result":{..}}
/// serialized with two-space indentation and a trailing newline. The digest
/// names the input: the table for table verbs, the canonical premise list
/// for derive, the parameters for probe.
std::string version_string();

std::string validation_report(const Table& table, const std::vector<ValidationIssue>& issues);
std::string check_report(const Table& table, const Verdict& verdict);
std::string enumeration_report(const Table& table, const Enumeration& enumeration);
std::string closure_report(const Closure& closure);
std::string probe_report(const ProbeReport& report);
/// `extended` records that a conditional or raw input went through the
/// uniform-prior extension first.
std::string commute_report(const Table& input, const WiNestReport& report, bool extended);

/// Premise list: [{"kind":"CI"|"WI","X":[..],"Y":[..],"universe":[..]}..].
/// A statement's universe, when present, must match `universe` as a set.
std::vector<AxiomStatement> load_premises(std::string_view text, const Universe& universe);

}  // namespace cwi
