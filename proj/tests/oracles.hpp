// Copyright 2026 The pmdm Authors
//
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

// Independent reference implementations and random instance generators shared
// by the unit tests and the acceptance runner. Nothing here calls the
// library's solvers; masks are plain bitmasks and matching is re-derived by
// comparing symbols.

#ifndef PMDM_TESTS_ORACLES_HPP_
#define PMDM_TESTS_ORACLES_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pmdm/pmdm.hpp"

namespace oracle {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::u32string random_word(Rng& rng, int l, int sigma) {
  std::u32string s(l, U'a');
  for (auto& c : s) c = static_cast<char32_t>(U'a' + uniform(rng, 0, sigma - 1));
  return s;
}

inline std::vector<std::u32string> random_words(Rng& rng, int d, int l,
                                                int sigma) {
  std::vector<std::u32string> out;
  for (int i = 0; i < d; ++i) out.push_back(random_word(rng, l, sigma));
  return out;
}

inline pmdm::Dictionary to_dictionary(const std::vector<std::u32string>& rows) {
  std::vector<pmdm::FixedString> v;
  for (const auto& r : rows) v.emplace_back(r);
  return pmdm::Dictionary(v);
}

// Count of rows equal to q outside the positions set in `mask`.
inline std::uint64_t count(const std::vector<std::u32string>& rows,
                           const std::u32string& q, std::uint64_t mask) {
  std::uint64_t n = 0;
  for (const auto& r : rows) {
    bool ok = true;
    for (std::size_t i = 0; i < q.size() && ok; ++i) {
      ok = ((mask >> i) & 1u) || r[i] == q[i];
    }
    n += ok;
  }
  return n;
}

inline std::vector<std::u32string> rows_of(const pmdm::Dictionary& d) {
  std::vector<std::u32string> rows;
  for (std::size_t i = 0; i < d.size(); ++i) rows.push_back(d.entry_string(i).str());
  return rows;
}

// Smallest number of positions to mask, found over all 2^l masks.
inline int min_mask_size(const std::vector<std::u32string>& rows,
                         const std::u32string& q, std::uint64_t z) {
  const int l = static_cast<int>(q.size());
  int best = l;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << l); ++m) {
    if (std::popcount(m) < best && count(rows, q, m) >= z) best = std::popcount(m);
  }
  return best;
}

// Minimum over masks reaching z for every query at once; l + 1 if none.
inline int min_multi_mask_size(const std::vector<std::u32string>& rows,
                               const std::vector<std::u32string>& queries,
                               std::uint64_t z) {
  const int l = static_cast<int>(queries.front().size());
  int best = l + 1;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << l); ++m) {
    if (std::popcount(m) >= best) continue;
    bool ok = true;
    for (const auto& q : queries) ok = ok && count(rows, q, m) >= z;
    if (ok) best = std::popcount(m);
  }
  return best;
}

// Hypergraph given as explicit (edge bits, weight) pairs.
struct RawHypergraph {
  int length = 0;
  std::uint64_t base = 0;
  std::map<std::uint64_t, std::uint64_t> edges;

  pmdm::WeightedHypergraph build() const {
    pmdm::HypergraphBuilder<std::uint64_t> b(length, 0);
    b.add_base(base);
    for (const auto& [k, w] : edges) b.add(k, w);
    return std::move(b).build();
  }

  std::uint64_t weight(std::uint64_t nodes) const {
    std::uint64_t w = base;
    for (const auto& [k, x] : edges) {
      if ((k & ~nodes) == 0) w += x;
    }
    return w;
  }

  // Heaviest weight over all size-k node sets.
  std::uint64_t best_weight(int k) const {
    std::uint64_t best = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << length); ++m) {
      if (std::popcount(m) == k) best = std::max(best, weight(m));
    }
    return best;
  }
};

inline RawHypergraph random_hypergraph(Rng& rng, int l, int edges,
                                       int max_size, int max_weight) {
  RawHypergraph h;
  h.length = l;
  h.base = uniform(rng, 0, 3);
  for (int i = 0; i < edges; ++i) {
    const int size = uniform(rng, 1, std::min(max_size, l));
    std::uint64_t key = 0;
    while (std::popcount(key) < size) key |= std::uint64_t{1} << uniform(rng, 0, l - 1);
    h.edges[key] += uniform(rng, 1, max_weight);
  }
  return h;
}

inline bool has_clique(const pmdm::Graph& g, int k) {
  const int n = g.node_count();
  if (k > n) return false;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) != k) continue;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      for (int v = u + 1; v < n && ok; ++v) {
        if (((m >> u) & 1u) && ((m >> v) & 1u)) ok = g.has_edge(u + 1, v + 1);
      }
    }
    if (ok) return true;
  }
  return false;
}

inline pmdm::Graph random_graph(Rng& rng, int n, double p) {
  pmdm::Graph g(n);
  std::bernoulli_distribution edge(p);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (edge(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

// Smallest union size over all z-subsets of the sets.
inline int min_union(const pmdm::MuInstance& mu) {
  const std::size_t d = mu.sets.size();
  std::vector<std::uint64_t> bits(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (const int x : mu.sets[i]) bits[i] |= std::uint64_t{1} << (x - 1);
  }
  int best = 65;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << d); ++m) {
    if (static_cast<std::uint64_t>(std::popcount(m)) != mu.z) continue;
    std::uint64_t u = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if ((m >> i) & 1u) u |= bits[i];
    }
    best = std::min(best, std::popcount(u));
  }
  return best;
}

inline pmdm::MuInstance random_mu(Rng& rng, int universe, int d) {
  pmdm::MuInstance mu;
  mu.universe = universe;
  for (int i = 0; i < d; ++i) {
    std::vector<int> s;
    for (int x = 1; x <= universe; ++x) {
      if (uniform(rng, 0, 3) == 0) s.push_back(x);
    }
    mu.sets.push_back(s);
  }
  mu.z = uniform(rng, 1, d);
  return mu;
}

// Does some kappa-subset of the vectors dominate the target? Exhaustive.
inline bool khv_feasible(const std::vector<std::vector<std::uint64_t>>& vecs,
                         const std::vector<std::uint64_t>& target, int kappa) {
  const std::size_t t = vecs.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << t); ++m) {
    if (std::popcount(m) != kappa) continue;
    std::vector<std::uint64_t> sum(target.size(), 0);
    for (std::size_t i = 0; i < t; ++i) {
      if (!((m >> i) & 1u)) continue;
      for (std::size_t c = 0; c < target.size(); ++c) sum[c] += vecs[i][c];
    }
    bool ok = true;
    for (std::size_t c = 0; c < target.size(); ++c) ok = ok && sum[c] >= target[c];
    if (ok) return true;
  }
  return false;
}

}  // namespace oracle

#endif  // PMDM_TESTS_ORACLES_HPP_
