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

// Instance translators: k-Clique to k-PMDM, PMDM to and from Minimum Union,
// and an exhaustive Minimum Union solver.

#ifndef PMDM_REDUCTIONS_HPP_
#define PMDM_REDUCTIONS_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pmdm/core.hpp"
#include "pmdm/errors.hpp"
#include "pmdm/exact.hpp"

namespace pmdm {

// Undirected simple graph on nodes 1..n.
class Graph {
 public:
  explicit Graph(int n) : n_(n) {
    if (n < 1) throw ContractError("graph needs at least one node");
  }

  void add_edge(int u, int v) {
    if (u > v) std::swap(u, v);
    if (u < 1 || v > n_) {
      throw BoundsError("edge (" + std::to_string(u) + ", " +
                        std::to_string(v) + ") outside 1.." +
                        std::to_string(n_));
    }
    if (u == v) throw FormatError("self-loop at node " + std::to_string(u));
    const std::pair<int, int> e{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) {
      throw FormatError("duplicate edge (" + std::to_string(u) + ", " +
                        std::to_string(v) + ")");
    }
    edges_.insert(it, e);
  }

  int node_count() const { return n_; }
  // Sorted, each with u < v.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(),
                              std::pair<int, int>{u, v});
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

// q = a^n and one string per edge with 'b' at both endpoints; a k-mask
// reaching k(k-1)/2 matches is exactly a k-clique.
inline PmdmInstance clique_to_pmdm(const Graph& g, int k) {
  if (k < 2) throw ContractError("clique size k must be at least 2");
  if (g.edges().empty()) throw FormatError("dictionary is empty: graph has no edges");
  if (g.node_count() > kMaxLength) {
    throw CapacityError("graph has more than 64 nodes");
  }
  const int n = g.node_count();
  std::vector<FixedString> rows;
  rows.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges()) {
    std::u32string s(n, U'a');
    s[u - 1] = U'b';
    s[v - 1] = U'b';
    rows.emplace_back(std::move(s));
  }
  return PmdmInstance{Dictionary(rows), FixedString(std::u32string(n, U'a')),
                      static_cast<std::uint64_t>(k) * (k - 1) / 2};
}

// Universe {1..universe}; sets hold 1-based elements.
struct MuInstance {
  int universe = 0;
  std::vector<std::vector<int>> sets;
  std::uint64_t z = 1;
};

struct MuSolution {
  std::vector<std::size_t> chosen;  // 0-based set indices, ascending
  std::vector<int> union_set;       // ascending
};

inline void validate(const MuInstance& inst) {
  if (inst.sets.empty()) throw FormatError("Minimum Union instance has no sets");
  if (inst.z < 1 || inst.z > inst.sets.size()) {
    throw InfeasibleThreshold("infeasible threshold: z = " +
                              std::to_string(inst.z) + " outside [1, " +
                              std::to_string(inst.sets.size()) + "]");
  }
  if (inst.universe < 0) throw FormatError("negative universe size");
  for (const auto& s : inst.sets) {
    for (const int x : s) {
      if (x < 1 || x > inst.universe) {
        throw BoundsError("set element " + std::to_string(x) +
                          " outside 1.." + std::to_string(inst.universe));
      }
    }
  }
}

// S_i = mismatch set of q and s_i.
inline MuInstance pmdm_to_mu(const PmdmInstance& inst) {
  require_same_length(inst.query.length(), inst.dictionary.length());
  MuInstance mu;
  mu.universe = inst.dictionary.length();
  mu.z = inst.z;
  for (std::size_t i = 0; i < inst.dictionary.size(); ++i) {
    mu.sets.push_back(
        MaskSet::from_bits(mismatch_bits(inst.query.symbols(),
                                         inst.dictionary.entry(i)))
            .positions());
  }
  return mu;
}

struct MuToPmdm {
  PmdmInstance instance;
  // rank_to_element[r - 1] is the universe element placed at position r.
  std::vector<int> rank_to_element;
};

// Elements occurring in some set are ranked in increasing order; s_i has 'b'
// at the ranks of S_i. When no set has elements, l = 1 and every string is
// "a".
inline MuToPmdm mu_to_pmdm(const MuInstance& inst) {
  validate(inst);
  std::vector<int> present;
  for (const auto& s : inst.sets) present.insert(present.end(), s.begin(), s.end());
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  if (present.size() > static_cast<std::size_t>(kMaxLength)) {
    throw CapacityError("union of all sets exceeds 64 elements");
  }
  const int l = std::max<int>(1, static_cast<int>(present.size()));
  std::vector<FixedString> rows;
  rows.reserve(inst.sets.size());
  for (const auto& s : inst.sets) {
    std::u32string row(l, U'a');
    for (const int x : s) {
      const auto r = std::lower_bound(present.begin(), present.end(), x) -
                     present.begin();
      row[r] = U'b';
    }
    rows.emplace_back(std::move(row));
  }
  return MuToPmdm{PmdmInstance{Dictionary(rows),
                               FixedString(std::u32string(l, U'a')), inst.z},
                  present};
}

// Maps a mask of the mu_to_pmdm instance back to universe elements.
inline std::vector<int> ranks_to_elements(const MuToPmdm& r, const MaskSet& k) {
  std::vector<int> out;
  for (const int p : k.positions()) {
    if (p <= static_cast<int>(r.rank_to_element.size())) {
      out.push_back(r.rank_to_element[p - 1]);
    }
  }
  return out;
}

struct MuBruteForceOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;  // z-subsets examined
};

// Every z-subset of the sets, in lexicographic index order; the first
// smallest union wins.
inline MuSolution mu_bruteforce(const MuInstance& inst,
                                const MuBruteForceOptions& opts = {}) {
  validate(inst);
  const std::size_t d = inst.sets.size();
  const std::uint64_t combos =
      binomial(static_cast<int>(std::min<std::size_t>(d, 1 << 30)),
               static_cast<int>(inst.z));
  if (combos > opts.budget) {
    throw CapacityError("C(d, z) = " + std::to_string(combos) +
                        " exceeds the enumeration budget");
  }
  // Elements compressed to bits.
  std::vector<int> present;
  for (const auto& s : inst.sets) present.insert(present.end(), s.begin(), s.end());
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  if (present.size() > 64) throw CapacityError("union exceeds 64 elements");
  std::vector<std::uint64_t> bits(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (const int x : inst.sets[i]) {
      bits[i] |= std::uint64_t{1} << (std::lower_bound(present.begin(),
                                                       present.end(), x) -
                                      present.begin());
    }
  }

  const std::size_t z = inst.z;
  std::vector<std::size_t> idx(z);
  for (std::size_t i = 0; i < z; ++i) idx[i] = i;
  std::vector<std::size_t> best_idx;
  int best_size = 65;
  std::uint64_t best_bits = 0;
  while (true) {
    std::uint64_t u = 0;
    for (const auto i : idx) u |= bits[i];
    if (std::popcount(u) < best_size) {
      best_size = std::popcount(u);
      best_idx = idx;
      best_bits = u;
    }
    int j = static_cast<int>(z) - 1;
    while (j >= 0 && idx[j] == d - z + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (std::size_t t = j + 1; t < z; ++t) idx[t] = idx[t - 1] + 1;
  }
  MuSolution sol{best_idx, {}};
  for (std::size_t r = 0; r < present.size(); ++r) {
    if ((best_bits >> r) & 1u) sol.union_set.push_back(present[r]);
  }
  return sol;
}

// The first z sets (ascending index) contained in K.
inline std::vector<std::size_t> extract_mu_solution(const MuInstance& inst,
                                                    const MaskSet& k) {
  validate(inst);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inst.sets.size() && out.size() < inst.z; ++i) {
    const bool inside = std::all_of(inst.sets[i].begin(), inst.sets[i].end(),
                                    [&](int x) { return k.contains(x); });
    if (inside) out.push_back(i);
  }
  if (out.size() < inst.z) {
    throw ContractError("invalid witness: only " + std::to_string(out.size()) +
                        " sets lie inside the mask, need " +
                        std::to_string(inst.z));
  }
  return out;
}

}  // namespace pmdm

#endif  // PMDM_REDUCTIONS_HPP_
