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

// Query structures for repeated (q, z) questions over one dictionary, all
// assuming 2^l is small:
//
//   SmallEllTable  per-query table of 2^l counts, built by a sum over subsets.
//   SimpleIndex    for one mask size k, counts of every masked dictionary
//                  string under every k-mask.
//   SplitIndex     half-string indexes for both halves plus counts of pairs
//                  of frequent masked halves; exact for every mask.

#ifndef PMDM_INDEX_HPP_
#define PMDM_INDEX_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "pmdm/core.hpp"
#include "pmdm/errors.hpp"

namespace pmdm {

inline constexpr int kDefaultTableLimit = 24;
inline constexpr std::uint64_t kDefaultWorkspaceLimit = std::uint64_t{1} << 27;

namespace detail {

inline void require_table_size(int length, int limit) {
  if (length > limit) {
    throw CapacityError("string length " + std::to_string(length) +
                        " exceeds the 2^l table limit of " +
                        std::to_string(limit));
  }
}

inline void require_query_threshold(std::uint64_t z, std::uint64_t z0,
                                    std::uint64_t d) {
  if (z < z0) {
    throw ContractError("z = " + std::to_string(z) +
                        " is below the index minimum z0 = " +
                        std::to_string(z0));
  }
  if (z > d) {
    throw InfeasibleThreshold("infeasible threshold: z = " + std::to_string(z) +
                              " exceeds d = " + std::to_string(d));
  }
}

// Symbols of s at the positions not in `mask` (bit i <=> s[i]).
inline std::u32string project(std::span<const Symbol> s, std::uint64_t mask) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!((mask >> i) & 1u)) out.push_back(s[i]);
  }
  return out;
}

// Karp-Rabin fingerprint over the Mersenne prime 2^61 - 1.
inline std::uint64_t fingerprint(const std::u32string& key) {
  constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;
  constexpr std::uint64_t kBase = 0x1F3D5B79A2C4E687ULL % kPrime;
  unsigned __int128 h = 0;
  for (const char32_t c : key) {
    h = (h * kBase + c + 1) % kPrime;
  }
  return static_cast<std::uint64_t>(h);
}

// Little-endian binary helpers.
inline void put_u8(std::ostream& out, std::uint8_t v) {
  out.put(static_cast<char>(v));
}
inline void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b.data(), 4);
}
inline void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b.data(), 8);
}
inline void put_symbols(std::ostream& out, std::span<const Symbol> s) {
  for (const Symbol c : s) put_u32(out, c);
}

inline std::uint64_t get_le(std::istream& in, int bytes) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), bytes);
  if (!in) throw FormatError("index file is truncated");
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}
inline std::uint8_t get_u8(std::istream& in) {
  return static_cast<std::uint8_t>(get_le(in, 1));
}
inline std::uint32_t get_u32(std::istream& in) {
  return static_cast<std::uint32_t>(get_le(in, 4));
}
inline std::uint64_t get_u64(std::istream& in) { return get_le(in, 8); }
inline std::u32string get_symbols(std::istream& in, std::size_t n) {
  std::u32string s(n, U'\0');
  for (auto& c : s) c = get_u32(in);
  return s;
}

inline void write_dictionary(std::ostream& out, const Dictionary& dict) {
  put_u32(out, static_cast<std::uint32_t>(dict.length()));
  put_u64(out, dict.size());
  for (std::size_t i = 0; i < dict.size(); ++i) put_symbols(out, dict.entry(i));
}

inline Dictionary read_dictionary_block(std::istream& in) {
  const int l = static_cast<int>(get_u32(in));
  const std::uint64_t d = get_u64(in);
  if (l < 1 || l > kMaxLength || d == 0) {
    throw FormatError("index file holds an invalid dictionary header");
  }
  std::vector<FixedString> rows;
  rows.reserve(d);
  for (std::uint64_t i = 0; i < d; ++i) rows.emplace_back(get_symbols(in, l));
  return Dictionary(rows);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Small-l

class SmallEllTable {
 public:
  SmallEllTable(int length, std::vector<std::uint64_t> counts)
      : length_(length), counts_(std::move(counts)) {}

  int length() const { return length_; }
  std::uint64_t count(std::uint64_t mask) const { return counts_.at(mask); }
  std::uint64_t dictionary_size() const { return counts_.back(); }
  std::span<const std::uint64_t> counts() const { return counts_; }

 private:
  int length_;
  std::vector<std::uint64_t> counts_;
};

// counts[i] = number of entries matched by q masked at i: each entry is
// dropped into the slot of its mismatch set, then summed over subsets one
// bit at a time.
inline SmallEllTable small_ell_build(const Dictionary& dict,
                                     const FixedString& q,
                                     int table_limit = kDefaultTableLimit) {
  require_same_length(q.length(), dict.length());
  const int l = dict.length();
  detail::require_table_size(l, table_limit);
  std::vector<std::uint64_t> a(std::size_t{1} << l, 0);
  for (std::size_t i = 0; i < dict.size(); ++i) {
    ++a[mismatch_bits(q.symbols(), dict.entry(i))];
  }
  for (int b = 0; b < l; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & bit) a[i] += a[i ^ bit];
    }
  }
  return SmallEllTable(l, std::move(a));
}

// Fewest wildcards reaching z; among equal sizes the smallest bitmask.
inline MaskSet small_ell_query(const SmallEllTable& table, std::uint64_t z) {
  detail::require_query_threshold(z, 1, table.dictionary_size());
  const auto a = table.counts();
  std::uint64_t best = a.size() - 1;
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    if (a[i] >= z && std::popcount(i) < std::popcount(best)) best = i;
  }
  return MaskSet::from_bits(best);
}

// ---------------------------------------------------------------------------
// Simple

enum class KeyMode : std::uint8_t { kExact = 0, kFingerprint = 1 };

// Count per masked string under one mask. In fingerprint mode keys are hashed
// by Karp-Rabin fingerprint and compared exactly on lookup, so a collision
// costs a comparison and never a wrong count.
class MaskedCounts {
 public:
  explicit MaskedCounts(KeyMode mode = KeyMode::kExact) : mode_(mode) {}

  void insert(std::u32string key, std::uint32_t count) {
    if (mode_ == KeyMode::kExact) {
      exact_.emplace(std::move(key), count);
    } else {
      hashed_[detail::fingerprint(key)].emplace_back(std::move(key), count);
    }
    ++size_;
  }

  std::uint32_t find(const std::u32string& key) const {
    if (mode_ == KeyMode::kExact) {
      auto it = exact_.find(key);
      return it == exact_.end() ? 0 : it->second;
    }
    auto it = hashed_.find(detail::fingerprint(key));
    if (it == hashed_.end()) return 0;
    for (const auto& [k, c] : it->second) {
      if (k == key) return c;
    }
    return 0;
  }

  std::size_t size() const { return size_; }

  template <class F>
  void for_each(F&& f) const {
    if (mode_ == KeyMode::kExact) {
      for (const auto& [k, c] : exact_) f(k, c);
    } else {
      for (const auto& [h, bucket] : hashed_) {
        for (const auto& [k, c] : bucket) f(k, c);
      }
    }
  }

 private:
  KeyMode mode_;
  std::size_t size_ = 0;
  std::unordered_map<std::u32string, std::uint32_t> exact_;
  std::unordered_map<std::uint64_t,
                     std::vector<std::pair<std::u32string, std::uint32_t>>>
      hashed_;
};

class SimpleIndex {
 public:
  int length() const { return length_; }
  int k() const { return k_; }
  std::uint64_t z0() const { return z0_; }
  std::uint64_t dictionary_size() const { return d_; }
  KeyMode key_mode() const { return mode_; }
  // k-masks in lexicographic order of their position lists.
  std::span<const std::uint64_t> masks() const { return masks_; }
  const MaskedCounts& table(std::size_t i) const { return tables_[i]; }

  // Count of entries matching q masked at masks()[i]; 0 if pruned below z0.
  std::uint64_t count(const FixedString& q, std::size_t i) const {
    return tables_[i].find(detail::project(q.symbols(), masks_[i]));
  }

  void serialize(std::ostream& out) const {
    detail::put_u32(out, static_cast<std::uint32_t>(length_));
    detail::put_u32(out, static_cast<std::uint32_t>(k_));
    detail::put_u64(out, z0_);
    detail::put_u64(out, d_);
    detail::put_u8(out, static_cast<std::uint8_t>(mode_));
    detail::put_u64(out, masks_.size());
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      detail::put_u64(out, masks_[i]);
      // Sorted for a byte-stable file.
      std::vector<std::pair<std::u32string, std::uint32_t>> rows;
      tables_[i].for_each([&](const std::u32string& key, std::uint32_t c) {
        rows.emplace_back(key, c);
      });
      std::sort(rows.begin(), rows.end());
      detail::put_u64(out, rows.size());
      for (const auto& [key, c] : rows) {
        detail::put_u32(out, c);
        detail::put_symbols(out, key);
      }
    }
  }

  static SimpleIndex deserialize(std::istream& in) {
    SimpleIndex idx;
    idx.length_ = static_cast<int>(detail::get_u32(in));
    idx.k_ = static_cast<int>(detail::get_u32(in));
    idx.z0_ = detail::get_u64(in);
    idx.d_ = detail::get_u64(in);
    const std::uint8_t mode = detail::get_u8(in);
    if (idx.length_ < 1 || idx.length_ > kMaxLength || idx.k_ < 1 ||
        idx.k_ > idx.length_ || mode > 1) {
      throw FormatError("invalid Simple index header");
    }
    idx.mode_ = static_cast<KeyMode>(mode);
    const std::uint64_t n = detail::get_u64(in);
    for (std::uint64_t i = 0; i < n; ++i) {
      idx.masks_.push_back(detail::get_u64(in));
      MaskedCounts table(idx.mode_);
      const std::uint64_t rows = detail::get_u64(in);
      for (std::uint64_t r = 0; r < rows; ++r) {
        const std::uint32_t c = detail::get_u32(in);
        table.insert(detail::get_symbols(in, idx.length_ - idx.k_), c);
      }
      idx.tables_.push_back(std::move(table));
    }
    return idx;
  }

 private:
  friend SimpleIndex simple_build(const Dictionary&, int, std::uint64_t,
                                  KeyMode, std::uint64_t);

  int length_ = 0;
  int k_ = 0;
  std::uint64_t z0_ = 1;
  std::uint64_t d_ = 0;
  KeyMode mode_ = KeyMode::kExact;
  std::vector<std::uint64_t> masks_;
  std::vector<MaskedCounts> tables_;
};

// For every k-mask, sorts the masked dictionary and keeps the run lengths
// that reach z0.
inline SimpleIndex simple_build(const Dictionary& dict, int k, std::uint64_t z0,
                                KeyMode mode = KeyMode::kExact,
                                std::uint64_t workspace_limit =
                                    kDefaultWorkspaceLimit) {
  const int l = dict.length();
  if (k < 1 || k > l) {
    throw BoundsError("k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(l) + "]");
  }
  if (z0 < 1 || z0 > dict.size()) {
    throw ContractError("z0 = " + std::to_string(z0) + " outside [1, d]");
  }
  if (saturating_mul(binomial(l, k), dict.size()) > workspace_limit) {
    throw CapacityError("C(l,k) * d exceeds the Simple workspace limit");
  }
  SimpleIndex idx;
  idx.length_ = l;
  idx.k_ = k;
  idx.z0_ = z0;
  idx.d_ = dict.size();
  idx.mode_ = mode;
  std::vector<std::u32string> keys(dict.size());
  for_each_combination(l, k, [&](std::uint64_t mask) {
    for (std::size_t i = 0; i < dict.size(); ++i) {
      keys[i] = detail::project(dict.entry(i), mask);
    }
    std::sort(keys.begin(), keys.end());
    MaskedCounts table(mode);
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      if (j - i >= z0) table.insert(keys[i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
    idx.masks_.push_back(mask);
    idx.tables_.push_back(std::move(table));
    return true;
  });
  return idx;
}

// The k-mask with the largest stored count (then the lexicographically
// smallest) among those reaching z.
inline std::optional<std::pair<MaskSet, std::uint64_t>> simple_query(
    const SimpleIndex& idx, const FixedString& q, std::uint64_t z) {
  require_same_length(q.length(), idx.length());
  detail::require_query_threshold(z, idx.z0(), idx.dictionary_size());
  std::optional<std::pair<MaskSet, std::uint64_t>> best;
  for (std::size_t i = 0; i < idx.masks().size(); ++i) {
    const std::uint64_t c = idx.count(q, i);
    if (c >= z && (!best || c > best->second)) {
      best.emplace(MaskSet::from_bits(idx.masks()[i]), c);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Split

class SplitIndex {
 public:
  struct HalfEntry {
    std::uint64_t mask = 0;
    std::u32string key;
    std::vector<std::uint32_t> matches;  // entry ids, ascending
  };

  // Index over one half of every entry: for each half-mask, the masked
  // half-strings that occur, each with the list of entries producing it.
  struct Half {
    int offset = 0;
    int length = 0;
    std::vector<std::unordered_map<std::u32string, std::uint32_t>> by_mask;
    std::vector<HalfEntry> entries;

    std::span<const Symbol> slice(std::span<const Symbol> s) const {
      return s.subspan(offset, length);
    }
    // Id of the masked half of s under `mask`, if stored.
    std::optional<std::uint32_t> find(std::span<const Symbol> s,
                                      std::uint64_t mask) const {
      const auto& m = by_mask[mask];
      auto it = m.find(detail::project(slice(s), mask));
      if (it == m.end()) return std::nullopt;
      return it->second;
    }
  };

  int length() const { return length_; }
  int left_length() const { return left_.length; }
  std::uint64_t tau() const { return tau_; }
  std::uint64_t z0() const { return z0_; }
  std::uint64_t dictionary_size() const { return dict_.size(); }
  std::size_t pair_count() const { return pairs_.size(); }
  const Half& left() const { return left_; }
  const Half& right() const { return right_; }
  const Dictionary& dictionary() const { return dict_; }

  bool frequent(const HalfEntry& e) const { return e.matches.size() >= tau_; }

  // Exact number of entries matched by q masked at `mask` when z0 = 1. With
  // larger z0, masks whose halves were pruned report 0, which only happens
  // when the true count is below z0.
  std::uint64_t count(const FixedString& q, std::uint64_t mask) const {
    const auto qs = q.symbols();
    const std::uint64_t lmask = mask & low_bits(left_.length);
    const std::uint64_t rmask = mask >> left_.length;
    const auto lid = left_.find(qs, lmask);
    if (!lid) return 0;
    const auto& le = left_.entries[*lid];
    if (!frequent(le)) return scan(le, right_, qs, rmask);
    const auto rid = right_.find(qs, rmask);
    if (!rid) return 0;
    const auto& re = right_.entries[*rid];
    if (!frequent(re)) return scan(re, left_, qs, lmask);
    auto it = pairs_.find(pair_key(*lid, *rid));
    return it == pairs_.end() ? 0 : it->second;
  }

  std::uint64_t pair_count_of(std::uint32_t left_id,
                              std::uint32_t right_id) const {
    auto it = pairs_.find(pair_key(left_id, right_id));
    return it == pairs_.end() ? 0 : it->second;
  }

  template <class F>
  void for_each_pair(F&& f) const {
    for (const auto& [key, c] : pairs_) {
      f(static_cast<std::uint32_t>(key >> 32),
        static_cast<std::uint32_t>(key & 0xFFFFFFFFu), c);
    }
  }

  void serialize(std::ostream& out) const {
    detail::put_u64(out, tau_);
    detail::put_u64(out, z0_);
    detail::write_dictionary(out, dict_);
    for (const Half* h : {&left_, &right_}) {
      detail::put_u64(out, h->entries.size());
      for (const auto& e : h->entries) {
        detail::put_u64(out, e.mask);
        detail::put_symbols(out, e.key);
        detail::put_u32(out, static_cast<std::uint32_t>(e.matches.size()));
        for (const auto id : e.matches) detail::put_u32(out, id);
      }
    }
    std::vector<std::pair<std::uint64_t, std::uint32_t>> rows(pairs_.begin(),
                                                              pairs_.end());
    std::sort(rows.begin(), rows.end());
    detail::put_u64(out, rows.size());
    for (const auto& [key, c] : rows) {
      detail::put_u32(out, static_cast<std::uint32_t>(key >> 32));
      detail::put_u32(out, static_cast<std::uint32_t>(key & 0xFFFFFFFFu));
      detail::put_u32(out, c);
    }
  }

  static SplitIndex deserialize(std::istream& in) {
    SplitIndex idx;
    idx.tau_ = detail::get_u64(in);
    idx.z0_ = detail::get_u64(in);
    idx.dict_ = detail::read_dictionary_block(in);
    idx.init_halves();
    for (Half* h : {&idx.left_, &idx.right_}) {
      const std::uint64_t n = detail::get_u64(in);
      for (std::uint64_t i = 0; i < n; ++i) {
        HalfEntry e;
        e.mask = detail::get_u64(in);
        if (e.mask >= h->by_mask.size()) {
          throw FormatError("Split index entry has an invalid mask");
        }
        e.key = detail::get_symbols(in, h->length - std::popcount(e.mask));
        const std::uint32_t m = detail::get_u32(in);
        e.matches.resize(m);
        for (auto& id : e.matches) id = detail::get_u32(in);
        h->by_mask[e.mask].emplace(e.key, static_cast<std::uint32_t>(i));
        h->entries.push_back(std::move(e));
      }
    }
    const std::uint64_t n = detail::get_u64(in);
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::uint32_t a = detail::get_u32(in);
      const std::uint32_t b = detail::get_u32(in);
      idx.pairs_.emplace(pair_key(a, b), detail::get_u32(in));
    }
    return idx;
  }

 private:
  friend SplitIndex split_build(const Dictionary&, std::uint64_t,
                                std::uint64_t, int);

  static std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (std::uint64_t{a} << 32) | b;
  }

  void init_halves() {
    length_ = dict_.length();
    left_.offset = 0;
    left_.length = (length_ + 1) / 2;
    right_.offset = left_.length;
    right_.length = length_ - left_.length;
    left_.by_mask.assign(std::size_t{1} << left_.length, {});
    right_.by_mask.assign(std::size_t{1} << right_.length, {});
  }

  // Counts the few entries listed in `e` whose other half matches q there.
  std::uint64_t scan(const HalfEntry& e, const Half& other,
                     std::span<const Symbol> q, std::uint64_t other_mask) const {
    const auto qo = other.slice(q);
    std::uint64_t n = 0;
    for (const auto id : e.matches) {
      const auto so = other.slice(dict_.entry(id));
      bool ok = true;
      for (int i = 0; i < other.length && ok; ++i) {
        ok = ((other_mask >> i) & 1u) || qo[i] == so[i];
      }
      if (ok) ++n;
    }
    return n;
  }

  int length_ = 0;
  std::uint64_t tau_ = 1;
  std::uint64_t z0_ = 1;
  Dictionary dict_;
  Half left_;
  Half right_;
  std::unordered_map<std::uint64_t, std::uint32_t> pairs_;
};

// Builds both half indexes over all half-masks, then counts, over every full
// mask and every entry, the pairs of masked halves that are both
// tau-frequent.
inline SplitIndex split_build(const Dictionary& dict, std::uint64_t tau,
                              std::uint64_t z0 = 1,
                              int table_limit = kDefaultTableLimit) {
  detail::require_table_size(dict.length(), table_limit);
  if (tau < 1 || tau > dict.size()) {
    throw ContractError("tau = " + std::to_string(tau) + " outside [1, d]");
  }
  if (z0 < 1 || z0 > dict.size()) {
    throw ContractError("z0 = " + std::to_string(z0) + " outside [1, d]");
  }
  SplitIndex idx;
  idx.tau_ = tau;
  idx.z0_ = z0;
  idx.dict_ = dict;
  idx.init_halves();
  const std::size_t d = dict.size();
  constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;

  // ids[p * masks + m]: id of entry p's masked half under m, or kAbsent.
  auto index_half = [&](SplitIndex::Half& h) {
    const std::size_t masks = h.by_mask.size();
    std::vector<std::uint32_t> ids(d * masks, kAbsent);
    for (std::size_t m = 0; m < masks; ++m) {
      std::vector<std::pair<std::u32string, std::uint32_t>> keyed(d);
      for (std::size_t p = 0; p < d; ++p) {
        keyed[p] = {detail::project(h.slice(dict.entry(p)), m),
                    static_cast<std::uint32_t>(p)};
      }
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t i = 0; i < d;) {
        std::size_t j = i;
        while (j < d && keyed[j].first == keyed[i].first) ++j;
        if (j - i >= z0) {
          const auto id = static_cast<std::uint32_t>(h.entries.size());
          SplitIndex::HalfEntry e{m, keyed[i].first, {}};
          for (std::size_t r = i; r < j; ++r) {
            e.matches.push_back(keyed[r].second);
            ids[keyed[r].second * masks + m] = id;
          }
          h.by_mask[m].emplace(e.key, id);
          h.entries.push_back(std::move(e));
        }
        i = j;
      }
    }
    return ids;
  };
  const auto left_ids = index_half(idx.left_);
  const auto right_ids = index_half(idx.right_);

  const std::size_t lmasks = idx.left_.by_mask.size();
  const std::size_t rmasks = idx.right_.by_mask.size();
  auto frequent_id = [&](const SplitIndex::Half& h,
                         const std::vector<std::uint32_t>& ids,
                         std::size_t slot) {
    const std::uint32_t id = ids[slot];
    return id != kAbsent && idx.frequent(h.entries[id]) ? id : kAbsent;
  };
  for (std::size_t lm = 0; lm < lmasks; ++lm) {
    for (std::size_t rm = 0; rm < rmasks; ++rm) {
      for (std::size_t p = 0; p < d; ++p) {
        const auto a = frequent_id(idx.left_, left_ids, p * lmasks + lm);
        if (a == kAbsent) continue;
        const auto b = frequent_id(idx.right_, right_ids, p * rmasks + rm);
        if (b == kAbsent) continue;
        ++idx.pairs_[SplitIndex::pair_key(a, b)];
      }
    }
  }
  return idx;
}

// Same answer as small_ell_query on the same dictionary and query.
inline MaskSet split_query(const SplitIndex& idx, const FixedString& q,
                           std::uint64_t z) {
  require_same_length(q.length(), idx.length());
  detail::require_query_threshold(z, idx.z0(), idx.dictionary_size());
  const std::uint64_t masks = std::uint64_t{1} << idx.length();
  std::uint64_t best = masks - 1;
  for (std::uint64_t i = 0; i < masks; ++i) {
    if (std::popcount(i) >= std::popcount(best)) continue;
    if (idx.count(q, i) >= z) best = i;
  }
  return MaskSet::from_bits(best);
}

// ---------------------------------------------------------------------------
// Index files: "PMDM1", a kind tag, then little-endian fields.

enum class IndexKind : std::uint8_t { kSmall = 1, kSimple = 2, kSplit = 3 };

// The Small-l "index" stores only the dictionary; the table is per query.
struct SmallEllIndex {
  Dictionary dictionary;
};

using AnyIndex = std::variant<SmallEllIndex, SimpleIndex, SplitIndex>;

inline constexpr std::string_view kIndexMagic = "PMDM1";

inline void write_index(std::ostream& out, const AnyIndex& index) {
  out.write(kIndexMagic.data(), static_cast<std::streamsize>(kIndexMagic.size()));
  std::visit(
      [&](const auto& idx) {
        using T = std::decay_t<decltype(idx)>;
        if constexpr (std::is_same_v<T, SmallEllIndex>) {
          detail::put_u8(out, static_cast<std::uint8_t>(IndexKind::kSmall));
          detail::write_dictionary(out, idx.dictionary);
        } else if constexpr (std::is_same_v<T, SimpleIndex>) {
          detail::put_u8(out, static_cast<std::uint8_t>(IndexKind::kSimple));
          idx.serialize(out);
        } else {
          detail::put_u8(out, static_cast<std::uint8_t>(IndexKind::kSplit));
          idx.serialize(out);
        }
      },
      index);
  if (!out) throw FormatError("failed to write index");
}

inline AnyIndex read_index(std::istream& in) {
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || std::string_view(magic.data(), magic.size()) != kIndexMagic) {
    throw FormatError("not a PMDM1 index file");
  }
  switch (static_cast<IndexKind>(detail::get_u8(in))) {
    case IndexKind::kSmall:
      return SmallEllIndex{detail::read_dictionary_block(in)};
    case IndexKind::kSimple:
      return SimpleIndex::deserialize(in);
    case IndexKind::kSplit:
      return SplitIndex::deserialize(in);
  }
  throw FormatError("unknown index kind tag");
}

}  // namespace pmdm

#endif  // PMDM_INDEX_HPP_
