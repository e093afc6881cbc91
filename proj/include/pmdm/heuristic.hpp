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

// Greedy tau-PMDM and the node-scoring baseline.
//
// Greedy repeatedly solves heaviest k-section exactly for k = 1..tau on the
// query with the positions fixed so far already masked. When every remaining
// mismatch set is larger than k, nodes are first peeled off by score
//
//   s(u) = |E_u| * (sum of w(e), e in E_u) / (sum of |e|, e in E_u)
//
// until an edge of size <= k appears.

#ifndef PMDM_HEURISTIC_HPP_
#define PMDM_HEURISTIC_HPP_

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmdm/core.hpp"
#include "pmdm/errors.hpp"
#include "pmdm/exact.hpp"
#include "pmdm/hypergraph.hpp"

namespace pmdm {

enum class NodeScore {
  kDefault,      // |E_u| * sum w / sum |e|
  kWeightPerSize // sum of w(e) / |e|; scored worse in practice
};

struct GreedyConfig {
  int tau = 3;
  // 0 selects ceil(l / tau).
  int max_iterations = 0;
  NodeScore score = NodeScore::kDefault;
  SectionOptions section;
};

struct HeuristicResult {
  MaskSet mask;
  int iterations = 0;
};

struct PreprocessResult {
  WeightedHypergraph graph;
  MaskSet removed;
};

namespace detail {

// Exact rational for the default score; long double for the alternative.
struct Score {
  unsigned __int128 num = 0;
  unsigned __int128 den = 1;
  long double approx = 0;
  bool exact = true;

  bool greater_than(const Score& o) const {
    if (exact) return num * o.den > o.num * den;
    return approx > o.approx;
  }
};

// Node with the highest score among nodes on at least one edge; -1 if none.
// Ties go to the smallest position.
inline int best_scored_node(const WeightedHypergraph& h, NodeScore kind) {
  const int l = h.length();
  std::vector<std::uint64_t> count(l, 0), weight(l, 0), sizes(l, 0);
  std::vector<long double> per_size(l, 0);
  const auto keys = h.edge_keys();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const int size = std::popcount(keys[i]);
    const std::uint64_t w = h.edge_weight(i);
    for (std::uint64_t b = keys[i]; b != 0; b &= b - 1) {
      const int u = std::countr_zero(b);
      ++count[u];
      weight[u] += w;
      sizes[u] += static_cast<std::uint64_t>(size);
      per_size[u] += static_cast<long double>(w) / size;
    }
  }
  int best = -1;
  Score best_score;
  for (int u = 0; u < l; ++u) {
    if (count[u] == 0) continue;
    Score s;
    if (kind == NodeScore::kDefault) {
      s.num = static_cast<unsigned __int128>(count[u]) * weight[u];
      s.den = sizes[u];
    } else {
      s.exact = false;
      s.approx = per_size[u];
    }
    if (best < 0 || s.greater_than(best_score)) {
      best = u;
      best_score = s;
    }
  }
  return best;
}

// Deletes node u from every edge; emptied edges join the base weight and
// edges that coincide afterwards are merged.
inline WeightedHypergraph remove_node(const WeightedHypergraph& h, int u) {
  HypergraphBuilder<std::uint64_t> b(h.length(), 0);
  b.add_base(h.base());
  const std::uint64_t keep = ~(std::uint64_t{1} << u);
  const auto keys = h.edge_keys();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    b.add(keys[i] & keep, h.edge_weight(i));
  }
  return std::move(b).build();
}

inline bool has_edge_up_to(const WeightedHypergraph& h, int k) {
  for (const auto key : h.edge_keys()) {
    if (std::popcount(key) <= k) return true;
  }
  return false;
}

// Gathers the bits of `value` selected by `select` into the low bits.
inline std::uint64_t extract_bits(std::uint64_t value, std::uint64_t select) {
  std::uint64_t out = 0;
  int i = 0;
  for (std::uint64_t b = select; b != 0; b &= b - 1, ++i) {
    if (value & (b & (~b + 1))) out |= std::uint64_t{1} << i;
  }
  return out;
}

// Inverse of extract_bits.
inline std::uint64_t deposit_bits(std::uint64_t value, std::uint64_t select) {
  std::uint64_t out = 0;
  int i = 0;
  for (std::uint64_t b = select; b != 0; b &= b - 1, ++i) {
    if ((value >> i) & 1u) out |= b & (~b + 1);
  }
  return out;
}

// h relabelled onto the nodes in `keep`, in position order. Every edge must
// lie inside `keep`.
inline WeightedHypergraph compact(const WeightedHypergraph& h,
                                  std::uint64_t keep) {
  HypergraphBuilder<std::uint64_t> b(std::popcount(keep), 0);
  b.add_base(h.base());
  const auto keys = h.edge_keys();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    b.add(extract_bits(keys[i], keep), h.edge_weight(i));
  }
  return std::move(b).build();
}

}  // namespace detail

// Removes top-scoring nodes until some edge has at most k nodes.
inline PreprocessResult preprocess(const WeightedHypergraph& h, int k,
                                   NodeScore score = NodeScore::kDefault) {
  PreprocessResult r{h, {}};
  while (r.graph.edge_count() > 0 && !detail::has_edge_up_to(r.graph, k)) {
    const int u = detail::best_scored_node(r.graph, score);
    r.removed |= MaskSet::from_bits(std::uint64_t{1} << u);
    r.graph = detail::remove_node(r.graph, u);
  }
  return r;
}

inline HeuristicResult greedy_pmdm(const PmdmInstance& inst,
                                   const GreedyConfig& cfg = {}) {
  validate(inst);
  if (cfg.tau < 1) throw ContractError("tau must be at least 1");
  const int l = inst.dictionary.length();
  const std::uint64_t all = low_bits(l);
  const int max_iterations =
      cfg.max_iterations > 0 ? cfg.max_iterations : (l + cfg.tau - 1) / cfg.tau;

  HeuristicResult result;
  auto h = build_hypergraph(inst.dictionary, inst.query);
  if (h.base() >= inst.z) return result;

  std::uint64_t fixed = 0;
  while (true) {
    ++result.iterations;
    if (result.iterations > 1) {
      h = build_hypergraph(inst.dictionary, inst.query, {},
                           MaskSet::from_bits(fixed));
    }
    std::optional<std::uint64_t> solved;
    std::uint64_t carry = 0;
    for (int k = 1; k <= cfg.tau; ++k) {
      const auto pre = preprocess(h, k, cfg.score);
      const std::uint64_t open = all & ~fixed & ~pre.removed.bits();
      std::uint64_t added = pre.removed.bits();
      std::uint64_t weight = pre.graph.base();
      if (open != 0) {
        const auto local = detail::compact(pre.graph, open);
        const int kk = std::min(k, local.length());
        const auto best = heaviest_k_section(local, kk, cfg.section);
        added |= detail::deposit_bits(best.nodes.bits(), open);
        weight = best.weight;
      }
      if (weight >= inst.z &&
          (!solved || std::popcount(added) < std::popcount(*solved))) {
        solved = added;
      }
      if (k == cfg.tau) carry = added;
    }
    if (solved) {
      result.mask = MaskSet::from_bits(fixed | *solved);
      return result;
    }
    if ((carry & ~fixed) == 0) {
      // No new position; mask the first open one so the loop advances.
      const std::uint64_t open = all & ~fixed;
      carry = open & (~open + 1);
    }
    fixed |= carry;
    const auto masked = mask_apply(inst.query, MaskSet::from_bits(fixed));
    if (count_matches(inst.dictionary, masked) >= inst.z ||
        result.iterations >= max_iterations || fixed == all) {
      // The iteration cap only binds if the caller lowered it; the full mask
      // always qualifies.
      if (count_matches(inst.dictionary, masked) < inst.z) fixed = all;
      result.mask = MaskSet::from_bits(fixed);
      return result;
    }
  }
}

// Adds the top-scoring node one at a time until z matches are reached.
inline HeuristicResult baseline_pmdm(const PmdmInstance& inst,
                                     NodeScore score = NodeScore::kDefault) {
  validate(inst);
  HeuristicResult result;
  auto h = build_hypergraph(inst.dictionary, inst.query);
  if (h.base() >= inst.z) return result;
  std::uint64_t mask = 0;
  while (true) {
    ++result.iterations;
    int u = detail::best_scored_node(h, score);
    if (u < 0) {
      const std::uint64_t open = low_bits(h.length()) & ~mask;
      u = std::countr_zero(open);
    }
    mask |= std::uint64_t{1} << u;
    h = detail::remove_node(h, u);
    const auto masked = mask_apply(inst.query, MaskSet::from_bits(mask));
    if (count_matches(inst.dictionary, masked) >= inst.z) {
      result.mask = MaskSet::from_bits(mask);
      return result;
    }
  }
}

}  // namespace pmdm

#endif  // PMDM_HEURISTIC_HPP_
