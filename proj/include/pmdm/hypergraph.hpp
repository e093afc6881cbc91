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

// The mismatch hypergraph and the heaviest k-section solvers.
//
// Nodes are the query positions 1..l. Every dictionary string s contributes
// one unit of weight to the edge formed by its mismatch positions against the
// query; strings that match the query exactly go to the base weight. The
// weight of the k-section on K (every edge inside K, plus the base) is then
// the number of strings matched by the query masked at K.
//
// Weights are either plain counts or fixed-width tuples of counts (one
// coordinate per query when several queries share a mask). The solvers only
// need an ordered commutative monoid: `+`, `==` and a strict order `Less`
// that is compatible with addition.

#ifndef PMDM_HYPERGRAPH_HPP_
#define PMDM_HYPERGRAPH_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pmdm/core.hpp"

namespace pmdm {

// m counts added component-wise and ordered lexicographically.
class TupleWeight {
 public:
  static constexpr int kMaxDim = 8;

  TupleWeight() = default;
  explicit TupleWeight(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) {
      throw CapacityError("tuple dimension " + std::to_string(dim) +
                          " outside [1, " + std::to_string(kMaxDim) + "]");
    }
  }
  static TupleWeight filled(int dim, std::uint64_t value) {
    TupleWeight t(dim);
    std::fill_n(t.v_.begin(), dim, value);
    return t;
  }

  int dim() const { return dim_; }
  std::uint64_t operator[](int i) const { return v_[i]; }
  std::uint64_t& operator[](int i) { return v_[i]; }

  TupleWeight& operator+=(const TupleWeight& o) {
    for (int i = 0; i < dim_; ++i) v_[i] += o.v_[i];
    return *this;
  }
  friend TupleWeight operator+(TupleWeight a, const TupleWeight& b) {
    a += b;
    return a;
  }
  friend bool operator==(const TupleWeight&, const TupleWeight&) = default;
  friend std::strong_ordering operator<=>(const TupleWeight& a,
                                          const TupleWeight& b) {
    return a.v_ <=> b.v_;
  }

  bool dominates(const TupleWeight& target) const {
    for (int i = 0; i < dim_; ++i) {
      if (v_[i] < target.v_[i]) return false;
    }
    return true;
  }
  // Component-wise max(0, this - o).
  TupleWeight saturating_minus(const TupleWeight& o) const {
    TupleWeight r(dim_);
    for (int i = 0; i < dim_; ++i) r.v_[i] = v_[i] > o.v_[i] ? v_[i] - o.v_[i] : 0;
    return r;
  }
  std::vector<std::uint64_t> to_vector() const {
    return std::vector<std::uint64_t>(v_.begin(), v_.begin() + dim_);
  }

 private:
  std::array<std::uint64_t, kMaxDim> v_{};
  int dim_ = 0;
};

inline bool is_zero_weight(std::uint64_t w) { return w == 0; }
inline bool is_zero_weight(const TupleWeight& w) {
  for (int i = 0; i < w.dim(); ++i) {
    if (w[i] != 0) return false;
  }
  return true;
}

// Immutable weighted hypergraph on nodes 1..length. Edges are stored as
// bitmasks in lexicographic order of their position lists.
template <class W>
class BasicHypergraph {
 public:
  using Weight = W;

  BasicHypergraph() = default;
  BasicHypergraph(int length, W zero) : length_(length), base_(zero), zero_(zero) {
    if (length < 1 || length > kMaxLength) {
      throw CapacityError("hypergraph needs 1..64 nodes, got " +
                          std::to_string(length));
    }
  }

  int length() const { return length_; }
  const W& base() const { return base_; }
  const W& zero() const { return zero_; }
  std::size_t edge_count() const { return keys_.size(); }
  std::span<const std::uint64_t> edge_keys() const { return keys_; }
  const W& edge_weight(std::size_t i) const { return weights_[i]; }

  int rank() const {
    int r = 0;
    for (const auto k : keys_) r = std::max(r, std::popcount(k));
    return r;
  }

  const W* find(std::uint64_t key) const {
    if (!dense_.empty()) {
      const std::int32_t i = dense_[key];
      return i < 0 ? nullptr : &weights_[i];
    }
    auto it = sparse_.find(key);
    return it == sparse_.end() ? nullptr : &weights_[it->second];
  }

  // Sum of the weights of the given edge keys that exist, plus nothing else.
  void add_if_present(W& acc, std::uint64_t key) const {
    if (const W* w = find(key)) acc += *w;
  }

 private:
  template <class>
  friend class HypergraphBuilder;

  // Direct-address table up to this many nodes; a hash map beyond.
  static constexpr int kDenseLimit = 16;

  void index() {
    if (length_ <= kDenseLimit) {
      dense_.assign(std::size_t{1} << length_, -1);
      for (std::size_t i = 0; i < keys_.size(); ++i) {
        dense_[keys_[i]] = static_cast<std::int32_t>(i);
      }
    } else {
      sparse_.reserve(keys_.size());
      for (std::size_t i = 0; i < keys_.size(); ++i) {
        sparse_.emplace(keys_[i], static_cast<std::uint32_t>(i));
      }
    }
  }

  int length_ = 0;
  W base_{};
  W zero_{};
  std::vector<std::uint64_t> keys_;
  std::vector<W> weights_;
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
};

template <class W>
class HypergraphBuilder {
 public:
  HypergraphBuilder(int length, W zero) : graph_(length, zero) {}

  void add(std::uint64_t key, const W& w) {
    if (key == 0) {
      graph_.base_ += w;
      return;
    }
    if ((key & ~low_bits(graph_.length_)) != 0) {
      throw BoundsError("edge outside the node range");
    }
    auto [it, inserted] = pending_.try_emplace(key, graph_.zero_);
    it->second += w;
  }
  void add_base(const W& w) { graph_.base_ += w; }

  BasicHypergraph<W> build() && {
    graph_.keys_.reserve(pending_.size());
    for (const auto& [key, w] : pending_) {
      if (!is_zero_weight(w)) graph_.keys_.push_back(key);
    }
    std::sort(graph_.keys_.begin(), graph_.keys_.end(), lex_less_bits);
    graph_.weights_.reserve(graph_.keys_.size());
    for (const auto key : graph_.keys_) graph_.weights_.push_back(pending_[key]);
    pending_.clear();
    graph_.index();
    return std::move(graph_);
  }

 private:
  BasicHypergraph<W> graph_;
  std::unordered_map<std::uint64_t, W> pending_;
};

using WeightedHypergraph = BasicHypergraph<std::uint64_t>;
using TupleHypergraph = BasicHypergraph<TupleWeight>;

template <class W>
struct SectionResult {
  MaskSet nodes;
  W weight{};
};

struct SectionOptions {
  // For k >= 4, plain enumeration is used whenever C(l,k) * 2^k is at most
  // this many probes (or cheaper than the predicted branching cost).
  std::uint64_t brute_force_budget = std::uint64_t{1} << 16;
};

// ---------------------------------------------------------------------------
// Construction

// Mismatch hypergraph of `query` against `dict`. Strings with more than
// `cutoff` mismatches are dropped. Positions in `masked` are treated as
// wildcards of the query and never appear in an edge.
inline WeightedHypergraph build_hypergraph(const Dictionary& dict,
                                           const FixedString& query,
                                           std::optional<int> cutoff = {},
                                           MaskSet masked = {}) {
  require_same_length(query.length(), dict.length());
  const int l = dict.length();
  if (cutoff && (*cutoff < 1 || *cutoff > l)) {
    throw BoundsError("edge-size cutoff " + std::to_string(*cutoff) +
                      " outside [1, " + std::to_string(l) + "]");
  }
  require_within(masked, l);
  HypergraphBuilder<std::uint64_t> builder(l, 0);
  const auto q = query.symbols();
  for (std::size_t i = 0; i < dict.size(); ++i) {
    const std::uint64_t m = mismatch_bits(q, dict.entry(i)) & ~masked.bits();
    if (cutoff && std::popcount(m) > *cutoff) continue;
    builder.add(m, 1);
  }
  return std::move(builder).build();
}

// One coordinate per query: coordinate j of edge e counts the strings whose
// mismatch set against queries[j] is exactly e.
inline TupleHypergraph build_tuple_hypergraph(
    const Dictionary& dict, std::span<const FixedString> queries) {
  if (queries.empty()) throw FormatError("no queries given");
  const int m = static_cast<int>(queries.size());
  HypergraphBuilder<TupleWeight> builder(dict.length(), TupleWeight(m));
  for (const auto& q : queries) require_same_length(q.length(), dict.length());
  for (std::size_t i = 0; i < dict.size(); ++i) {
    for (int j = 0; j < m; ++j) {
      TupleWeight unit(m);
      unit[j] = 1;
      builder.add(mismatch_bits(queries[j].symbols(), dict.entry(i)), unit);
    }
  }
  return std::move(builder).build();
}

// Copy of h keeping only the edges with at most `max_size` nodes.
template <class W>
BasicHypergraph<W> restrict_rank(const BasicHypergraph<W>& h, int max_size) {
  HypergraphBuilder<W> b(h.length(), h.zero());
  b.add_base(h.base());
  const auto keys = h.edge_keys();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (std::popcount(keys[i]) <= max_size) b.add(keys[i], h.edge_weight(i));
  }
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Section weights

template <class W>
W section_weight_bits(const BasicHypergraph<W>& h, std::uint64_t k) {
  W acc = h.base();
  const int size = std::popcount(k);
  if (size < 63 && (std::uint64_t{1} << size) <= h.edge_count()) {
    for (std::uint64_t sub = k; sub != 0; sub = (sub - 1) & k) {
      h.add_if_present(acc, sub);
    }
  } else {
    const auto keys = h.edge_keys();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if ((keys[i] & ~k) == 0) acc += h.edge_weight(i);
    }
  }
  return acc;
}

template <class W>
W section_weight(const BasicHypergraph<W>& h, const MaskSet& k) {
  require_within(k, h.length());
  return section_weight_bits(h, k.bits());
}

namespace detail {

template <class W, class Less>
struct BestSection {
  explicit BestSection(Less less) : less(less) {}

  void offer(std::uint64_t nodes, const W& weight) {
    if (!found || less(best.weight, weight) ||
        (!less(weight, best.weight) && lex_less_bits(nodes, best.nodes.bits()))) {
      best.nodes = MaskSet::from_bits(nodes);
      best.weight = weight;
      found = true;
    }
  }

  Less less;
  SectionResult<W> best;
  bool found = false;
};

template <class W>
std::vector<W> singleton_weights(const BasicHypergraph<W>& h) {
  std::vector<W> w(h.length(), h.zero());
  for (int v = 0; v < h.length(); ++v) {
    if (const W* x = h.find(std::uint64_t{1} << v)) w[v] = *x;
  }
  return w;
}

// The `count` heaviest nodes outside `exclude`; ties go to smaller positions.
template <class W, class Less>
std::uint64_t top_nodes(const std::vector<W>& weights, std::uint64_t exclude,
                        int count, Less less) {
  std::vector<int> order;
  for (int v = 0; v < static_cast<int>(weights.size()); ++v) {
    if (!((exclude >> v) & 1u)) order.push_back(v);
  }
  count = std::min<int>(count, static_cast<int>(order.size()));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return less(weights[b], weights[a]);
  });
  std::uint64_t bits = 0;
  for (int i = 0; i < count; ++i) bits |= std::uint64_t{1} << order[i];
  return bits;
}

template <class W>
void require_section_size(const BasicHypergraph<W>& h, int k, int min_k) {
  if (k < min_k || k > h.length()) {
    throw BoundsError("section size " + std::to_string(k) + " outside [" +
                      std::to_string(min_k) + ", " +
                      std::to_string(h.length()) + "]");
  }
}

// Weight each node v outside x would add to x: the edges Y + {v}, Y within x.
template <class W>
std::vector<W> relative_node_weights(const BasicHypergraph<W>& h,
                                     std::uint64_t x) {
  std::vector<W> w(h.length(), h.zero());
  for (int v = 0; v < h.length(); ++v) {
    const std::uint64_t bit = std::uint64_t{1} << v;
    if (x & bit) continue;
    h.add_if_present(w[v], bit);
    for (std::uint64_t sub = x; sub != 0; sub = (sub - 1) & x) {
      h.add_if_present(w[v], sub | bit);
    }
  }
  return w;
}

}  // namespace detail

// Every subset of size k, scored by probing its 2^k subsets.
template <class W, class Less = std::less<W>>
SectionResult<W> heaviest_k_section_bruteforce(const BasicHypergraph<W>& h,
                                               int k, Less less = {}) {
  detail::require_section_size(h, k, 0);
  detail::BestSection<W, Less> best(less);
  for_each_combination(h.length(), k, [&](std::uint64_t bits) {
    best.offer(bits, section_weight_bits(h, bits));
    return true;
  });
  return best.best;
}

// Either K is a size-2 edge, or K holds no such edge and is the pair of
// heaviest nodes.
template <class W, class Less = std::less<W>>
SectionResult<W> heaviest_2_section(const BasicHypergraph<W>& h,
                                    Less less = {}) {
  detail::require_section_size(h, 2, 2);
  detail::BestSection<W, Less> best(less);
  for (const auto key : h.edge_keys()) {
    if (std::popcount(key) == 2) best.offer(key, section_weight_bits(h, key));
  }
  const auto nodes = detail::singleton_weights(h);
  const std::uint64_t top = detail::top_nodes(nodes, 0, 2, less);
  best.offer(top, section_weight_bits(h, top));
  return best.best;
}

// K is a size-3 edge, a size-2 edge plus one node, or the three heaviest
// nodes.
template <class W, class Less = std::less<W>>
SectionResult<W> heaviest_3_section(const BasicHypergraph<W>& h,
                                    Less less = {}) {
  detail::require_section_size(h, 3, 3);
  detail::BestSection<W, Less> best(less);
  const int l = h.length();
  for (const auto key : h.edge_keys()) {
    const int size = std::popcount(key);
    if (size == 3) {
      best.offer(key, section_weight_bits(h, key));
    } else if (size == 2) {
      for (int v = 0; v < l; ++v) {
        const std::uint64_t bit = std::uint64_t{1} << v;
        if (key & bit) continue;
        best.offer(key | bit, section_weight_bits(h, key | bit));
      }
    }
  }
  const auto nodes = detail::singleton_weights(h);
  const std::uint64_t top = detail::top_nodes(nodes, 0, 3, less);
  best.offer(top, section_weight_bits(h, top));
  return best.best;
}

// Visits every partial solution X reachable by repeatedly adding an edge that
// brings at least two new nodes while keeping |X| <= k, starting from the
// empty set. Each distinct X is visited once.
template <class W, class Visit>
void for_each_branch_state(const BasicHypergraph<W>& h, int k, Visit&& visit) {
  std::vector<std::uint64_t> branch_edges;
  for (const auto key : h.edge_keys()) {
    const int size = std::popcount(key);
    if (size >= 2 && size <= k) branch_edges.push_back(key);
  }
  std::unordered_set<std::uint64_t> seen{0};
  std::vector<std::uint64_t> stack{0};
  while (!stack.empty()) {
    const std::uint64_t x = stack.back();
    stack.pop_back();
    visit(x);
    for (const auto e : branch_edges) {
      const std::uint64_t next = x | e;
      if (std::popcount(e & ~x) >= 2 && std::popcount(next) <= k &&
          seen.insert(next).second) {
        stack.push_back(next);
      }
    }
  }
}

// Branching over edges with two or more new nodes; each branch is closed by
// the k - |X| heaviest nodes relative to X.
template <class W, class Less = std::less<W>>
SectionResult<W> heaviest_k_section_branching(const BasicHypergraph<W>& h,
                                              int k, Less less = {}) {
  detail::require_section_size(h, k, 0);
  detail::BestSection<W, Less> best(less);
  for_each_branch_state(h, k, [&](std::uint64_t x) {
    std::uint64_t candidate = x;
    const int missing = k - std::popcount(x);
    if (missing > 0) {
      const auto rel = detail::relative_node_weights(h, x);
      candidate |= detail::top_nodes(rel, x, missing, less);
    }
    best.offer(candidate, section_weight_bits(h, candidate));
  });
  return best.best;
}

// Dispatches on k to the cheapest exact solver.
template <class W, class Less = std::less<W>>
SectionResult<W> heaviest_k_section(const BasicHypergraph<W>& h, int k,
                                    const SectionOptions& options = {},
                                    Less less = {}) {
  detail::require_section_size(h, k, 0);
  const int l = h.length();
  if (k == 0) return {MaskSet{}, h.base()};
  if (k == l) return {MaskSet::full(l), section_weight_bits(h, low_bits(l))};
  if (k == 1) {
    const auto nodes = detail::singleton_weights(h);
    const std::uint64_t top = detail::top_nodes(nodes, 0, 1, less);
    return {MaskSet::from_bits(top), section_weight_bits(h, top)};
  }
  if (k == 2) return heaviest_2_section(h, less);
  if (k == 3) return heaviest_3_section(h, less);

  const std::uint64_t brute_cost =
      saturating_mul(binomial(l, k), std::uint64_t{1} << k);
  std::uint64_t branch_edges = 0;
  for (const auto key : h.edge_keys()) {
    const int size = std::popcount(key);
    if (size >= 2 && size <= k) ++branch_edges;
  }
  std::uint64_t branch_cost = saturating_mul(
      static_cast<std::uint64_t>(l), std::uint64_t{1} << k);
  for (int i = 0; i < k / 2; ++i) {
    branch_cost = saturating_mul(branch_cost, std::max<std::uint64_t>(branch_edges, 1));
  }
  if (brute_cost <= options.brute_force_budget || brute_cost <= branch_cost) {
    return heaviest_k_section_bruteforce(h, k, less);
  }
  return heaviest_k_section_branching(h, k, less);
}

}  // namespace pmdm

#endif  // PMDM_HYPERGRAPH_HPP_
