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

#include <functional>
#include <optional>

#include "cwi/error.hpp"

// The code of the cwi::Error `fn` throws, or nullopt when it returns.
inline std::optional<cwi::ErrorCode> code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const cwi::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
