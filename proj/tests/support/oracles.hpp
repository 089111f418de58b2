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

// Brute-force reference implementations for tests. Deliberately naive:
// relations are boolean matrices built by pairwise comparison, compositions
// are triple loops, and independence uses the product form
// P(x,y,z)·P(y) = P(x,y)·P(y,z) summed straight from the rows.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cwi/table.hpp"

namespace oracle {

using cwi::Config;
using cwi::Rational;
using cwi::Table;
using cwi::VarSet;
using Rel = std::vector<std::vector<bool>>;

struct Pt {
  Config config;
  Rational p;
};

inline std::vector<Pt> points(const Table& t) {
  std::vector<Pt> out;
  for (const auto& r : t.rows()) out.push_back({r.config, r.p});
  return out;
}

inline bool agree(const Config& a, const Config& b, VarSet v) {
  for (auto i : v.indices()) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

inline Rel relation(const std::vector<Pt>& s, VarSet v) {
  Rel r(s.size(), std::vector<bool>(s.size(), false));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) r[i][j] = agree(s[i].config, s[j].config, v);
  }
  return r;
}

inline Rel compose(const Rel& p, const Rel& q) {
  const std::size_t n = p.size();
  Rel r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!p[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (q[j][k]) r[i][k] = true;
      }
    }
  }
  return r;
}

// Warshall closure of p ∪ q.
inline Rel join(const Rel& p, const Rel& q) {
  const std::size_t n = p.size();
  Rel r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i][j] = p[i][j] || q[i][j];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

// Classes of an equivalence matrix, each listed in ascending order.
inline std::vector<std::vector<std::size_t>> classes(const Rel& e) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> done(e.size(), false);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> c;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[i][j]) {
        c.push_back(j);
        done[j] = true;
      }
    }
    out.push_back(c);
  }
  return out;
}

inline Rational mass(const std::vector<Pt>& s, const std::vector<std::size_t>& within, const Config& at,
                     VarSet v) {
  Rational m;
  for (auto i : within) {
    if (agree(s[i].config, at, v)) m += s[i].p;
  }
  return m;
}

inline std::vector<std::size_t> everything(const std::vector<Pt>& s) {
  std::vector<std::size_t> all(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) all[i] = i;
  return all;
}

// Product-form CI over the rows `within`, for every combination of the
// x, y and z values those rows exhibit.
inline bool ci_product(const std::vector<Pt>& s, const std::vector<std::size_t>& within, VarSet x, VarSet z,
                       VarSet y) {
  for (auto a : within) {
    for (auto b : within) {
      for (auto c : within) {
        Config at = s[a].config;
        for (auto i : y.indices()) at[i] = s[a].config[i];
        for (auto i : x.indices()) at[i] = s[b].config[i];
        for (auto i : z.indices()) at[i] = s[c].config[i];
        const Rational lhs = mass(s, within, at, x | y | z) * mass(s, within, at, y);
        const Rational rhs = mass(s, within, at, x | y) * mass(s, within, at, y | z);
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

inline bool ci(const Table& joint, VarSet x, VarSet z, VarSet y) {
  const auto s = points(joint);
  return ci_product(s, everything(s), x, z, y);
}

struct WeakResult {
  bool commutes = false;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> class_ci;
};

inline WeakResult weak(const std::vector<Pt>& s, VarSet x, VarSet z, VarSet y) {
  WeakResult r;
  const Rel p = relation(s, x | y);
  const Rel q = relation(s, y | z);
  const Rel pq = compose(p, q);
  r.commutes = pq == compose(q, p);
  if (!r.commutes) return r;
  r.classes = classes(pq);
  for (const auto& c : r.classes) r.class_ci.push_back(ci_product(s, c, x, z, y));
  return r;
}

inline bool wi(const Table& joint, VarSet x, VarSet z, VarSet y) {
  const auto r = weak(points(joint), x, z, y);
  if (!r.commutes) return false;
  for (bool b : r.class_ci) {
    if (!b) return false;
  }
  return true;
}

// Nest commutation by hand: two nesting orders compared as maps from
// (rest, X-cell, Z-cell) to mass, where each cell is the normalized sorted
// list of inner (value, probability) pairs.
inline bool nest_orders_agree(const Table& joint, VarSet x, VarSet z) {
  using Cell = std::map<std::vector<std::uint32_t>, Rational>;
  const auto s = points(joint);
  auto proj = [](const Config& c, VarSet v) { return cwi::project(c, v); };
  using Inner = std::map<std::vector<std::uint32_t>, Rational>;
  // First A then B: group on everything but A, then on everything but B.
  auto order = [&](VarSet first, VarSet second) {
    // Stage 1: key (rest without first) -> cell over first.
    std::map<std::vector<std::uint32_t>, std::pair<Rational, Inner>> g1;
    const VarSet keep1 = joint.schema().all() - first;
    for (const auto& pt : s) {
      auto& e = g1[proj(pt.config, keep1)];
      e.first += pt.p;
      e.second[proj(pt.config, first)] += pt.p;
    }
    // Stage 2: rows are (keep1-values, cell1, p); group by (y-values, cell1).
    std::map<std::pair<std::vector<std::uint32_t>, Cell>, std::pair<Rational, Inner>> g2;
    for (auto& [k, e] : g1) {
      Cell c1;
      for (auto& [v, m] : e.second) c1[v] = m / e.first;
      // keep1 = y ∪ second; split k into those parts.
      std::vector<std::uint32_t> yv, sv;
      std::size_t idx = 0;
      for (auto i : keep1.indices()) {
        (second.contains(i) ? sv : yv).push_back(k[idx++]);
      }
      auto& f = g2[{yv, c1}];
      f.first += e.first;
      f.second[sv] += e.first;
    }
    std::map<std::tuple<std::vector<std::uint32_t>, Cell, Cell>, Rational> out;
    for (auto& [k, f] : g2) {
      Cell c2;
      for (auto& [v, m] : f.second) c2[v] = m / f.first;
      out[{k.first, k.second, c2}] = f.first;
    }
    return out;
  };
  // Normalize key order to (y, X-cell, Z-cell).
  const auto a = order(z, x);  // Z nested first: key (y, Z-cell, X-cell)
  const auto b = order(x, z);  // X first: key (y, X-cell, Z-cell)
  std::map<std::tuple<std::vector<std::uint32_t>, Cell, Cell>, Rational> a2;
  for (const auto& [k, m] : a) a2[{std::get<0>(k), std::get<2>(k), std::get<1>(k)}] = m;
  return a2 == b;
}

// Random joint table with the given domain sizes; every cell is zero with
// probability one half, otherwise weighted 1..9.
inline Table random_table(std::mt19937_64& rng, const std::vector<std::size_t>& sizes) {
  std::vector<cwi::Variable> vars;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::vector<std::string> d;
    for (std::size_t k = 0; k < sizes[i]; ++k) d.push_back(std::to_string(k));
    vars.push_back({"V" + std::to_string(i), d});
  }
  auto schema = std::make_shared<const cwi::Schema>(vars);
  std::vector<cwi::Row> rows;
  long total = 0;
  std::vector<std::pair<Config, long>> cells;
  Config c(sizes.size(), 0);
  while (true) {
    const long w = (rng() % 2 == 0) ? 0 : static_cast<long>(1 + rng() % 9);
    if (w > 0) cells.emplace_back(c, w);
    total += w;
    std::size_t k = sizes.size();
    bool done = true;
    while (k-- > 0) {
      if (++c[k] < sizes[k]) {
        done = false;
        break;
      }
      c[k] = 0;
    }
    if (done) break;
  }
  if (cells.empty()) {
    cells.emplace_back(Config(sizes.size(), 0), 1);
    total = 1;
  }
  for (auto& [cfg, w] : cells) rows.push_back({cfg, Rational(w, total), ""});
  return Table::joint(schema, rows);
}

// Nonembedded (X, Z, Y) triples with X and Z nonempty, as bitmasks.
inline std::vector<std::array<VarSet, 3>> triples(std::size_t n) {
  std::vector<std::array<VarSet, 3>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    VarSet x, z, y;
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) {
      (c % 3 == 0 ? x : (c % 3 == 1 ? z : y)).insert(i);
    }
    if (!x.empty() && !z.empty()) out.push_back({x, z, y});
  }
  return out;
}

}  // namespace oracle
