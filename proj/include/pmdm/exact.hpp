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

// Exact minimum-mask solvers for one query and for several queries sharing
// one mask.

#ifndef PMDM_EXACT_HPP_
#define PMDM_EXACT_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmdm/core.hpp"
#include "pmdm/errors.hpp"
#include "pmdm/hypergraph.hpp"

namespace pmdm {

struct PmdmInstance {
  Dictionary dictionary;
  FixedString query;
  std::uint64_t z = 1;
};

struct MpmdmInstance {
  Dictionary dictionary;
  std::vector<FixedString> queries;
  std::uint64_t z = 1;
};

inline void validate(const PmdmInstance& inst) {
  require_same_length(inst.query.length(), inst.dictionary.length());
  if (inst.z < 1) throw ContractError("threshold z must be at least 1");
  if (inst.z > inst.dictionary.size()) {
    throw InfeasibleThreshold("infeasible threshold: z = " +
                              std::to_string(inst.z) + " exceeds d = " +
                              std::to_string(inst.dictionary.size()));
  }
}

inline void validate(const MpmdmInstance& inst) {
  if (inst.queries.empty()) throw FormatError("no queries given");
  for (const auto& q : inst.queries) {
    require_same_length(q.length(), inst.dictionary.length());
  }
  if (inst.z < 1) throw ContractError("threshold z must be at least 1");
  if (inst.z > inst.dictionary.size()) {
    throw InfeasibleThreshold("infeasible threshold: z = " +
                              std::to_string(inst.z) + " exceeds d = " +
                              std::to_string(inst.dictionary.size()));
  }
}

struct SolveOptions {
  SectionOptions section;
};

// Smallest K such that query masked at K matches at least z entries. The
// hypergraph is built once; each size k only re-filters it to rank k.
inline MaskSet solve_pmdm(const PmdmInstance& inst,
                          const SolveOptions& options = {}) {
  validate(inst);
  const auto full = build_hypergraph(inst.dictionary, inst.query);
  if (full.base() >= inst.z) return {};
  for (int k = 1; k <= full.length(); ++k) {
    const auto h = restrict_rank(full, k);
    auto best = heaviest_k_section(h, k, options.section);
    if (best.weight >= inst.z) return best.nodes;
  }
  return MaskSet::full(full.length());  // unreachable: z <= d
}

// Is there a mask of exactly k positions reaching z matches? A threshold
// above d simply has no such mask.
inline bool decide_k_pmdm(const PmdmInstance& inst, int k,
                          const SolveOptions& options = {}) {
  require_same_length(inst.query.length(), inst.dictionary.length());
  if (k < 1 || k > inst.dictionary.length()) {
    throw BoundsError("k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(inst.dictionary.length()) + "]");
  }
  if (inst.z < 1) throw ContractError("threshold z must be at least 1");
  if (inst.z > inst.dictionary.size()) return false;
  const auto h = build_hypergraph(inst.dictionary, inst.query, k);
  return heaviest_k_section(h, k, options.section).weight >= inst.z;
}

struct BruteForceOptions {
  // Cap on the cumulative sum of C(l,i) * 2^i probes; 0 means unlimited.
  std::uint64_t budget = 0;
};

// Ground truth: every subset of size 0, 1, 2, ... in turn.
inline MaskSet bruteforce_pmdm(const PmdmInstance& inst,
                               const BruteForceOptions& options = {}) {
  validate(inst);
  const auto h = build_hypergraph(inst.dictionary, inst.query);
  const int l = h.length();
  std::uint64_t spent = 0;
  for (int k = 0; k <= l; ++k) {
    spent = saturating_add(
        spent, saturating_mul(binomial(l, k), std::uint64_t{1} << k));
    if (options.budget != 0 && spent > options.budget) {
      throw CapacityError("brute force budget of " +
                          std::to_string(options.budget) +
                          " probes exceeded at k = " + std::to_string(k));
    }
    auto best = heaviest_k_section_bruteforce(h, k);
    if (best.weight >= inst.z) return best.nodes;
  }
  return MaskSet::full(l);
}

// ---------------------------------------------------------------------------
// kappa heaviest vectors

struct KhvInstance {
  std::vector<std::vector<std::uint64_t>> vectors;
  std::vector<std::uint64_t> target;
  int kappa = 0;
  // Upper bound on the target entries; 0 skips the check.
  std::uint64_t z = 0;
};

struct KhvOptions {
  // Guard on (t + 1) * (kappa + 1) * (number of capped prefixes).
  std::uint64_t state_limit = std::uint64_t{1} << 26;
};

// Picks kappa vectors whose component-wise sum dominates the target, or
// nothing if no such choice exists.
//
// best[j][v] is the largest last-coordinate sum over j-subsets of the vectors
// seen so far whose other coordinates, each capped at its target entry, are
// v. Capping keeps exactly the information the final test needs.
inline std::optional<std::vector<std::size_t>> solve_khv(
    const KhvInstance& inst, const KhvOptions& options = {}) {
  const std::size_t t = inst.vectors.size();
  const int m = static_cast<int>(inst.target.size());
  if (m < 1) throw FormatError("target tuple is empty");
  if (inst.kappa < 0 || static_cast<std::size_t>(inst.kappa) > t) {
    throw ContractError("kappa = " + std::to_string(inst.kappa) +
                        " outside [0, " + std::to_string(t) + "]");
  }
  for (const auto& v : inst.vectors) {
    if (static_cast<int>(v.size()) != m) {
      throw BoundsError("vector dimension differs from the target's");
    }
  }
  if (inst.z != 0) {
    for (const auto x : inst.target) {
      if (x > inst.z) throw ContractError("target entry exceeds z");
    }
  }

  // Mixed-radix encoding of the capped prefix (coordinates 0..m-2).
  std::vector<std::uint64_t> radix(m > 1 ? m - 1 : 0);
  std::uint64_t states = 1;
  for (int i = 0; i + 1 < m; ++i) {
    radix[i] = inst.target[i] + 1;
    states = saturating_mul(states, radix[i]);
  }
  const std::uint64_t kappa = static_cast<std::uint64_t>(inst.kappa);
  const std::uint64_t cells =
      saturating_mul(saturating_mul(t + 1, kappa + 1), states);
  if (cells > options.state_limit) {
    throw CapacityError("kappa-HV table of " + std::to_string(cells) +
                        " cells exceeds the limit");
  }

  const std::size_t width = static_cast<std::size_t>(states);
  const std::size_t layer = (kappa + 1) * width;
  auto at = [&](std::uint64_t j, std::uint64_t v) { return j * width + v; };

  std::vector<std::int64_t> best(layer, -1), next(layer);
  best[at(0, 0)] = 0;
  // parent[i][j][v]: prefix before taking vector i, or -1 if not taken.
  std::vector<std::int64_t> parent(t * layer, -1);

  std::vector<std::uint64_t> digits(radix.size());
  for (std::size_t i = 0; i < t; ++i) {
    const auto& u = inst.vectors[i];
    next = best;
    for (std::uint64_t j = 0; j < kappa; ++j) {
      for (std::uint64_t v = 0; v < width; ++v) {
        const std::int64_t cur = best[at(j, v)];
        if (cur < 0) continue;
        std::uint64_t rest = v, nv = 0, scale = 1;
        for (std::size_t c = 0; c < radix.size(); ++c) {
          const std::uint64_t d = rest % radix[c];
          rest /= radix[c];
          const std::uint64_t capped = std::min(d + u[c], radix[c] - 1);
          nv += capped * scale;
          scale *= radix[c];
        }
        const std::int64_t val = cur + static_cast<std::int64_t>(u[m - 1]);
        if (val > next[at(j + 1, nv)]) {
          next[at(j + 1, nv)] = val;
          parent[i * layer + at(j + 1, nv)] = static_cast<std::int64_t>(v);
        }
      }
    }
    best.swap(next);
  }

  std::uint64_t goal = 0, scale = 1;
  for (std::size_t c = 0; c < radix.size(); ++c) {
    goal += (radix[c] - 1) * scale;
    scale *= radix[c];
  }
  const std::int64_t reach = best[at(kappa, goal)];
  if (reach < 0 || static_cast<std::uint64_t>(reach) < inst.target[m - 1]) {
    return std::nullopt;
  }

  // Walk back: a state either came from taking vector i or was carried over.
  std::vector<std::size_t> picked;
  std::uint64_t j = kappa, v = goal;
  for (std::size_t i = t; i-- > 0 && j > 0;) {
    // Was (j, v) last improved by taking vector i? Replay that decision.
    const std::int64_t from = parent[i * layer + at(j, v)];
    if (from < 0) continue;
    picked.push_back(i);
    v = static_cast<std::uint64_t>(from);
    --j;
  }
  std::reverse(picked.begin(), picked.end());
  return picked;
}

// ---------------------------------------------------------------------------
// Several queries, one mask

enum class MpmdmStrategy { kAuto, kEnumerate, kBranching };

struct MpmdmOptions {
  MpmdmStrategy strategy = MpmdmStrategy::kAuto;
  KhvOptions khv;
};

namespace detail {

inline std::optional<std::uint64_t> mpmdm_enumerate(const TupleHypergraph& h,
                                                    int k,
                                                    const TupleWeight& target) {
  std::optional<std::uint64_t> found;
  for_each_combination(h.length(), k, [&](std::uint64_t bits) {
    if (section_weight_bits(h, bits).dominates(target)) {
      found = bits;
      return false;
    }
    return true;
  });
  return found;
}

inline std::optional<std::uint64_t> mpmdm_branching(const TupleHypergraph& h,
                                                    int k,
                                                    const TupleWeight& target,
                                                    const KhvOptions& khv) {
  std::optional<std::uint64_t> found;
  const int m = target.dim();
  for_each_branch_state(h, k, [&](std::uint64_t x) {
    const TupleWeight inside = section_weight_bits(h, x);
    KhvInstance inst;
    inst.kappa = k - std::popcount(x);
    inst.target = inside.dominates(target)
                      ? std::vector<std::uint64_t>(m, 0)
                      : target.saturating_minus(inside).to_vector();
    const auto rel = relative_node_weights(h, x);
    std::vector<int> nodes;
    for (int v = 0; v < h.length(); ++v) {
      if ((x >> v) & 1u) continue;
      nodes.push_back(v);
      inst.vectors.push_back(rel[v].to_vector());
    }
    const auto pick = solve_khv(inst, khv);
    if (!pick) return;
    std::uint64_t candidate = x;
    for (const auto i : *pick) candidate |= std::uint64_t{1} << nodes[i];
    if (!found || lex_less_bits(candidate, *found)) found = candidate;
  });
  return found;
}

}  // namespace detail

// Smallest K such that every query masked at K matches at least z entries.
inline MaskSet solve_mpmdm(const MpmdmInstance& inst,
                           const MpmdmOptions& options = {}) {
  validate(inst);
  const auto full = build_tuple_hypergraph(inst.dictionary, inst.queries);
  const int m = static_cast<int>(inst.queries.size());
  const auto target = TupleWeight::filled(m, inst.z);
  if (full.base().dominates(target)) return {};
  const int l = full.length();
  for (int k = 1; k <= l; ++k) {
    const auto h = restrict_rank(full, k);
    bool enumerate = options.strategy == MpmdmStrategy::kEnumerate;
    if (options.strategy == MpmdmStrategy::kAuto) {
      const std::uint64_t enum_cost = saturating_mul(
          saturating_mul(binomial(l, k), std::uint64_t{1} << k),
          static_cast<std::uint64_t>(m));
      std::uint64_t prefixes = 1;
      for (int i = 0; i + 1 < m; ++i) prefixes = saturating_mul(prefixes, inst.z + 1);
      std::uint64_t branch_edges = 0;
      for (const auto key : h.edge_keys()) {
        if (std::popcount(key) >= 2) ++branch_edges;
      }
      std::uint64_t branch_cost = saturating_add(
          saturating_mul(static_cast<std::uint64_t>(l), std::uint64_t{1} << k),
          saturating_mul(saturating_mul(static_cast<std::uint64_t>(l),
                                        static_cast<std::uint64_t>(k)),
                         prefixes));
      for (int i = 0; i < k / 2; ++i) {
        branch_cost = saturating_mul(branch_cost, std::max<std::uint64_t>(branch_edges, 1));
      }
      enumerate = enum_cost <= branch_cost;
    }
    const auto found =
        enumerate ? detail::mpmdm_enumerate(h, k, target)
                  : detail::mpmdm_branching(h, k, target, options.khv);
    if (found) return MaskSet::from_bits(*found);
  }
  return MaskSet::full(l);
}

}  // namespace pmdm

#endif  // PMDM_EXACT_HPP_
