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

#include <fstream>
#include <iterator>
#include <string>

#include "cwi/table.hpp"
#include "cwi/table_io.hpp"

#ifndef CWI_FIXTURE_DIR
#error "CWI_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(CWI_FIXTURE_DIR) + "/" + name; }

inline std::string read(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline cwi::Table load(const std::string& name, cwi::LoadMode mode = cwi::LoadMode::kStrict) {
  const bool csv = name.size() > 4 && name.substr(name.size() - 4) == ".csv";
  return cwi::load_table(read(name), csv ? cwi::TableFormat::kCsv : cwi::TableFormat::kJson, mode);
}

inline const char* const kAll[] = {"context_strong.json", "context_weak.json", "weak_classes.json", "coarsen.json", "coarsen.csv", "nest_order.json"};

}  // namespace fixtures
