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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cwi {

/// A set of variables, addressed by their position in a schema or universe.
/// Iteration order is always ascending position.
class VarSet {
 public:
  static constexpr std::size_t kMaxVariables = 64;

  constexpr VarSet() = default;
  static constexpr VarSet from_bits(std::uint64_t bits) { return VarSet(bits); }
  static constexpr VarSet single(std::size_t index) { return VarSet(std::uint64_t{1} << index); }
  /// The first `n` positions.
  static constexpr VarSet first(std::size_t n) {
    return VarSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1U; }
  constexpr void insert(std::size_t index) { bits_ |= std::uint64_t{1} << index; }
  constexpr bool subset_of(VarSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(VarSet other) const { return (bits_ & other.bits_) == 0; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr VarSet operator|(VarSet a, VarSet b) { return VarSet(a.bits_ | b.bits_); }
  friend constexpr VarSet operator&(VarSet a, VarSet b) { return VarSet(a.bits_ & b.bits_); }
  friend constexpr VarSet operator-(VarSet a, VarSet b) { return VarSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(const VarSet&, const VarSet&) = default;
  friend constexpr auto operator<=>(const VarSet&, const VarSet&) = default;

 private:
  constexpr explicit VarSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Calls `fn(subset)` for every subset of `set`, in increasing bit-pattern order.
template <typename Fn>
void for_each_subset(VarSet set, Fn&& fn) {
  const std::uint64_t full = set.bits();
  std::uint64_t sub = 0;
  while (true) {
    fn(VarSet::from_bits(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

}  // namespace cwi
