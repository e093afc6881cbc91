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

// Strings, masks and wildcard matching.
//
// Positions are 1-based at every public boundary and 0-based bit indices
// inside a MaskSet. A string has at most 64 positions so that any mask fits
// in one machine word.

#ifndef PMDM_CORE_HPP_
#define PMDM_CORE_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmdm/errors.hpp"

namespace pmdm {

using Symbol = char32_t;

// Not a Unicode scalar value, so it can never be decoded from input text.
inline constexpr Symbol kWildcard = 0xFFFFFFFFu;
inline constexpr int kMaxLength = 64;
inline constexpr char32_t kDefaultGlyph = U'?';

// ---------------------------------------------------------------------------
// UTF-8

inline std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      throw FormatError("invalid UTF-8 lead byte at offset " +
                        std::to_string(i));
    }
    if (i + extra >= text.size()) {
      throw FormatError("truncated UTF-8 sequence at offset " +
                        std::to_string(i));
    }
    for (int j = 1; j <= extra; ++j) {
      const auto cont = static_cast<unsigned char>(text[i + j]);
      if ((cont & 0xC0) != 0x80) {
        throw FormatError("invalid UTF-8 continuation byte at offset " +
                          std::to_string(i + j));
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw FormatError("invalid code point at offset " + std::to_string(i));
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// ---------------------------------------------------------------------------
// MaskSet

inline std::uint64_t low_bits(int count) {
  return count >= 64 ? ~std::uint64_t{0}
                     : (std::uint64_t{1} << count) - 1;
}

// A set of query positions, stored as a bitmask (bit i <=> position i + 1).
class MaskSet {
 public:
  MaskSet() = default;

  static MaskSet from_bits(std::uint64_t bits) {
    MaskSet m;
    m.bits_ = bits;
    return m;
  }

  static MaskSet full(int length) { return from_bits(low_bits(length)); }

  // Positions are 1-based and must lie in [1, length]; order is irrelevant.
  static MaskSet from_positions(std::span<const int> positions, int length) {
    std::uint64_t bits = 0;
    for (const int p : positions) {
      if (p < 1 || p > length) {
        throw BoundsError("mask position " + std::to_string(p) +
                          " outside [1, " + std::to_string(length) + "]");
      }
      const std::uint64_t bit = std::uint64_t{1} << (p - 1);
      if (bits & bit) {
        throw FormatError("duplicate mask position " + std::to_string(p));
      }
      bits |= bit;
    }
    return from_bits(bits);
  }

  static MaskSet from_positions(std::initializer_list<int> positions,
                                int length) {
    return from_positions(std::span<const int>(positions.begin(),
                                               positions.size()),
                          length);
  }

  std::uint64_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int position) const {
    return position >= 1 && position <= kMaxLength &&
           ((bits_ >> (position - 1)) & 1u);
  }
  bool is_subset_of(const MaskSet& other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // Highest position in the set, 0 when empty.
  int max_position() const { return 64 - std::countl_zero(bits_); }

  std::vector<int> positions() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b) + 1);
    }
    return out;
  }

  MaskSet operator|(const MaskSet& o) const { return from_bits(bits_ | o.bits_); }
  MaskSet operator&(const MaskSet& o) const { return from_bits(bits_ & o.bits_); }
  MaskSet& operator|=(const MaskSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend bool operator==(const MaskSet&, const MaskSet&) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Lexicographic order of the sorted position lists, as bitmasks.
inline bool lex_less_bits(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const std::uint64_t diff = a ^ b;
  const std::uint64_t first = diff & (~diff + 1);
  const std::uint64_t above = ~((first << 1) - 1);
  // The shorter list wins when the other one merely extends it.
  if (a & first) return (b & above) != 0;
  return (a & above) == 0;
}

inline bool lex_less(const MaskSet& a, const MaskSet& b) {
  return lex_less_bits(a.bits(), b.bits());
}

// ---------------------------------------------------------------------------
// Strings

// A query or dictionary entry: l symbols, none of them the wildcard.
class FixedString {
 public:
  FixedString() = default;

  explicit FixedString(std::u32string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw FormatError("strings must be non-empty");
    if (symbols_.size() > kMaxLength) {
      throw CapacityError("string length " + std::to_string(symbols_.size()) +
                          " exceeds the 64-position limit");
    }
    if (std::find(symbols_.begin(), symbols_.end(), kWildcard) !=
        symbols_.end()) {
      throw FormatError("wildcard symbol inside a plain string");
    }
  }

  // The glyph that renders the wildcard may not occur in plain strings.
  static FixedString from_utf8(std::string_view text,
                               char32_t glyph = kDefaultGlyph) {
    std::u32string s = decode_utf8(text);
    if (std::find(s.begin(), s.end(), glyph) != s.end()) {
      throw FormatError("wildcard glyph found in string '" +
                        std::string(text) + "'");
    }
    return FixedString(std::move(s));
  }

  int length() const { return static_cast<int>(symbols_.size()); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }
  const std::u32string& str() const { return symbols_; }

  std::string to_utf8() const {
    std::string out;
    for (const Symbol c : symbols_) append_utf8(out, c);
    return out;
  }

  friend bool operator==(const FixedString&, const FixedString&) = default;

 private:
  std::u32string symbols_;
};

// A string over the alphabet extended with the wildcard.
class MaskedString {
 public:
  MaskedString() = default;
  explicit MaskedString(std::u32string symbols) : symbols_(std::move(symbols)) {}

  // Parses text in which `glyph` stands for the wildcard.
  static MaskedString from_utf8(std::string_view text,
                                char32_t glyph = kDefaultGlyph) {
    std::u32string s = decode_utf8(text);
    for (auto& c : s) {
      if (c == glyph) c = kWildcard;
    }
    return MaskedString(std::move(s));
  }

  int length() const { return static_cast<int>(symbols_.size()); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }
  bool is_wildcard(std::size_t i) const { return symbols_[i] == kWildcard; }

  std::string to_utf8(char32_t glyph = kDefaultGlyph) const {
    std::string out;
    for (const Symbol c : symbols_) append_utf8(out, c == kWildcard ? glyph : c);
    return out;
  }

  friend bool operator==(const MaskedString&, const MaskedString&) = default;

 private:
  std::u32string symbols_;
};

// ---------------------------------------------------------------------------
// Dictionary

// d entries of a common length l, stored contiguously. Duplicates are kept.
class Dictionary {
 public:
  Dictionary() = default;

  explicit Dictionary(std::span<const FixedString> entries) {
    if (entries.empty()) throw FormatError("dictionary is empty");
    length_ = entries.front().length();
    data_.reserve(entries.size() * static_cast<std::size_t>(length_));
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].length() != length_) {
        throw FormatError("dictionary entry " + std::to_string(i + 1) +
                          " has length " +
                          std::to_string(entries[i].length()) + ", expected " +
                          std::to_string(length_));
      }
      data_.insert(data_.end(), entries[i].str().begin(),
                   entries[i].str().end());
    }
    size_ = entries.size();
  }

  explicit Dictionary(const std::vector<FixedString>& entries)
      : Dictionary(std::span<const FixedString>(entries)) {}

  // Convenience for tests and generators: entries given as UTF-8 text.
  static Dictionary from_strings(std::initializer_list<std::string_view> rows,
                                 char32_t glyph = kDefaultGlyph) {
    std::vector<FixedString> v;
    for (auto r : rows) v.push_back(FixedString::from_utf8(r, glyph));
    return Dictionary(v);
  }

  std::size_t size() const { return size_; }
  int length() const { return length_; }
  std::size_t total_symbols() const { return data_.size(); }

  std::span<const Symbol> entry(std::size_t i) const {
    return std::span<const Symbol>(data_).subspan(i * length_, length_);
  }
  FixedString entry_string(std::size_t i) const {
    auto e = entry(i);
    return FixedString(std::u32string(e.begin(), e.end()));
  }

 private:
  std::vector<Symbol> data_;
  std::size_t size_ = 0;
  int length_ = 0;
};

// ---------------------------------------------------------------------------
// Operations

inline void require_same_length(int a, int b) {
  if (a != b) {
    throw BoundsError("length mismatch: " + std::to_string(a) + " vs " +
                      std::to_string(b));
  }
}

inline void require_within(const MaskSet& k, int length) {
  if ((k.bits() & ~low_bits(length)) != 0) {
    throw BoundsError("mask position " + std::to_string(k.max_position()) +
                      " outside [1, " + std::to_string(length) + "]");
  }
}

// Bitmask of positions where a and b differ; a wildcard in a differs from
// nothing.
inline std::uint64_t mismatch_bits(std::span<const Symbol> a,
                                   std::span<const Symbol> b) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i] && a[i] != kWildcard) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

inline MaskedString mask_apply(const FixedString& q, const MaskSet& k) {
  require_within(k, q.length());
  std::u32string out = q.str();
  for (std::uint64_t b = k.bits(); b != 0; b &= b - 1) {
    out[std::countr_zero(b)] = kWildcard;
  }
  return MaskedString(std::move(out));
}

inline bool matches(const MaskedString& x, std::span<const Symbol> y) {
  require_same_length(x.length(), static_cast<int>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i] != kWildcard && x[i] != y[i]) return false;
  }
  return true;
}

inline bool matches(const MaskedString& x, const FixedString& y) {
  return matches(x, y.symbols());
}

inline MaskSet mismatch_set(const FixedString& q, const FixedString& s) {
  require_same_length(q.length(), s.length());
  return MaskSet::from_bits(mismatch_bits(q.symbols(), s.symbols()));
}

// Linear scan; the reference count every solver is checked against.
inline std::size_t count_matches(const Dictionary& dict,
                                 const MaskedString& x) {
  require_same_length(x.length(), dict.length());
  std::size_t n = 0;
  for (std::size_t i = 0; i < dict.size(); ++i) {
    if (matches(x, dict.entry(i))) ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Combinatorics shared by the solvers

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(r);
}

// Calls f(bits) for every k-subset of {0..n-1} in lexicographic order of the
// sorted index lists. f returns false to stop early.
template <class F>
void for_each_combination(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint64_t bits = 0;
    for (const int i : idx) bits |= std::uint64_t{1} << i;
    if (!f(bits)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace pmdm

#endif  // PMDM_CORE_HPP_
