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

#include "pmdm/exact.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pmdm/reductions.hpp"

namespace pmdm {
namespace {

FixedString fs(std::string_view s) { return FixedString::from_utf8(s); }

Dictionary t1() {
  return Dictionary::from_strings({"abab", "abbb", "aaaa", "bbab", "abaa"});
}

PmdmInstance t1_instance(std::uint64_t z) { return {t1(), fs("abab"), z}; }

TEST(SolvePmdm, SmallDictionary) {
  EXPECT_TRUE(solve_pmdm(t1_instance(1)).empty());
  EXPECT_EQ(solve_pmdm(t1_instance(4)).positions(), (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(solve_pmdm(t1_instance(5)).positions(),
            (std::vector<int>{1, 2, 3, 4}));
}

TEST(SolvePmdm, SizesMatchExhaustiveSearch) {
  const auto rows = oracle::rows_of(t1());
  for (std::uint64_t z = 1; z <= 5; ++z) {
    EXPECT_EQ(solve_pmdm(t1_instance(z)).size(),
              oracle::min_mask_size(rows, U"abab", z));
    EXPECT_EQ(bruteforce_pmdm(t1_instance(z)).size(),
              solve_pmdm(t1_instance(z)).size());
  }
}

TEST(SolvePmdm, InfeasibleThreshold) {
  EXPECT_THROW(solve_pmdm(t1_instance(6)), InfeasibleThreshold);
  EXPECT_THROW(bruteforce_pmdm(t1_instance(6)), InfeasibleThreshold);
  EXPECT_THROW(solve_pmdm(t1_instance(0)), ContractError);
}

TEST(DecideK, SmallDictionary) {
  EXPECT_TRUE(decide_k_pmdm(t1_instance(2), 1));
  EXPECT_FALSE(decide_k_pmdm(t1_instance(4), 2));
  EXPECT_THROW(decide_k_pmdm(t1_instance(2), 0), BoundsError);
  EXPECT_THROW(decide_k_pmdm(t1_instance(2), 5), BoundsError);
}

TEST(DecideK, TriangleGraph) {
  Graph g(3);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  EXPECT_TRUE(decide_k_pmdm(clique_to_pmdm(g, 3), 3));
}

TEST(BruteForce, TrivialCases) {
  const PmdmInstance far{Dictionary::from_strings({"bbb"}), fs("aaa"), 1};
  EXPECT_EQ(bruteforce_pmdm(far).positions(), (std::vector<int>{1, 2, 3}));
  const PmdmInstance dup{Dictionary::from_strings({"ab", "ab", "ba"}), fs("ab"), 2};
  EXPECT_TRUE(bruteforce_pmdm(dup).empty());
}

TEST(BruteForce, BudgetGuard) {
  const PmdmInstance far{Dictionary::from_strings({"bbbbbbbb"}), fs("aaaaaaaa"), 1};
  EXPECT_THROW(bruteforce_pmdm(far, {100}), CapacityError);
}

TEST(SolveKhv, Examples) {
  KhvInstance a{{{1, 0}, {0, 1}, {1, 1}}, {1, 1}, 1};
  const auto pa = solve_khv(a);
  ASSERT_TRUE(pa);
  EXPECT_EQ(*pa, (std::vector<std::size_t>{2}));

  KhvInstance b{{{3, 4}}, {0, 0}, 0};
  const auto pb = solve_khv(b);
  ASSERT_TRUE(pb);
  EXPECT_TRUE(pb->empty());

  KhvInstance c{{{1, 0}, {1, 0}}, {0, 1}, 2};
  EXPECT_FALSE(solve_khv(c));
}

TEST(SolveKhv, RejectsBadShapes) {
  EXPECT_THROW(solve_khv(KhvInstance{{{1, 2}}, {1}, 1}), BoundsError);
  EXPECT_THROW(solve_khv(KhvInstance{{{1}}, {1}, 2}), ContractError);
  EXPECT_THROW(solve_khv(KhvInstance{{{1}}, {7}, 1, 5}), ContractError);
}

class KhvProperties : public ::testing::TestWithParam<int> {};

TEST_P(KhvProperties, AgreesWithEnumeration) {
  oracle::Rng rng(GetParam());
  const int t = oracle::uniform(rng, 0, 10);
  const int m = oracle::uniform(rng, 1, 3);
  KhvInstance inst;
  for (int i = 0; i < t; ++i) {
    std::vector<std::uint64_t> v(m);
    for (auto& x : v) x = oracle::uniform(rng, 0, 3);
    inst.vectors.push_back(v);
  }
  inst.target.resize(m);
  for (auto& x : inst.target) x = oracle::uniform(rng, 0, 6);
  inst.kappa = oracle::uniform(rng, 0, t);
  const auto got = solve_khv(inst);
  EXPECT_EQ(got.has_value(),
            oracle::khv_feasible(inst.vectors, inst.target, inst.kappa));
  if (got) {
    ASSERT_EQ(got->size(), static_cast<std::size_t>(inst.kappa));
    std::vector<std::uint64_t> sum(m, 0);
    for (const auto i : *got) {
      for (int c = 0; c < m; ++c) sum[c] += inst.vectors[i][c];
    }
    for (int c = 0; c < m; ++c) EXPECT_GE(sum[c], inst.target[c]);
    EXPECT_TRUE(std::is_sorted(got->begin(), got->end()));
    EXPECT_EQ(std::adjacent_find(got->begin(), got->end()), got->end());
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, KhvProperties, ::testing::Range(0, 80));

TEST(SolveMpmdm, Examples) {
  MpmdmInstance a{Dictionary::from_strings({"aa", "ab", "ba"}),
                  {fs("aa"), fs("bb")}, 2};
  EXPECT_EQ(solve_mpmdm(a).positions(), (std::vector<int>{1, 2}));
  MpmdmInstance b{Dictionary::from_strings({"ab", "ab", "cb"}),
                  {fs("ab"), fs("cb")}, 2};
  EXPECT_EQ(solve_mpmdm(b).positions(), (std::vector<int>{1}));
}

TEST(SolveMpmdm, Errors) {
  MpmdmInstance a{Dictionary::from_strings({"aa", "ab"}), {fs("aa")}, 3};
  EXPECT_THROW(solve_mpmdm(a), InfeasibleThreshold);
  MpmdmInstance b{Dictionary::from_strings({"aa", "ab"}), {fs("aa"), fs("a")}, 1};
  EXPECT_THROW(solve_mpmdm(b), BoundsError);
}

class ExactProperties : public ::testing::TestWithParam<int> {};

TEST_P(ExactProperties, SolverIsOptimalFeasibleAndMinimal) {
  oracle::Rng rng(GetParam());
  const int l = oracle::uniform(rng, 1, 9);
  const int d = oracle::uniform(rng, 1, 30);
  const auto rows = oracle::random_words(rng, d, l, oracle::uniform(rng, 2, 4));
  const FixedString q(oracle::uniform(rng, 0, 1) ? rows[0]
                                                 : oracle::random_word(rng, l, 3));
  const PmdmInstance inst{oracle::to_dictionary(rows), q,
                          static_cast<std::uint64_t>(oracle::uniform(rng, 1, d))};
  const auto k = solve_pmdm(inst);
  const int want = oracle::min_mask_size(rows, q.str(), inst.z);
  EXPECT_EQ(k.size(), want);
  EXPECT_EQ(bruteforce_pmdm(inst).size(), want);
  EXPECT_GE(oracle::count(rows, q.str(), k.bits()), inst.z);
  if (k.size() >= 1) {
    EXPECT_TRUE(decide_k_pmdm(inst, k.size()));
  }
  if (k.size() >= 2) {
    EXPECT_FALSE(decide_k_pmdm(inst, k.size() - 1));
  }
}

TEST_P(ExactProperties, MultiQueryMatchesEnumeration) {
  oracle::Rng rng(1000 + GetParam());
  const int l = oracle::uniform(rng, 1, 7);
  const int d = oracle::uniform(rng, 1, 15);
  const auto rows = oracle::random_words(rng, d, l, 3);
  const int m = oracle::uniform(rng, 1, 3);
  std::vector<std::u32string> qs;
  std::vector<FixedString> queries;
  for (int j = 0; j < m; ++j) {
    qs.push_back(oracle::random_word(rng, l, 3));
    queries.emplace_back(qs.back());
  }
  const MpmdmInstance inst{oracle::to_dictionary(rows), queries,
                           static_cast<std::uint64_t>(oracle::uniform(rng, 1, d))};
  const int want = oracle::min_multi_mask_size(rows, qs, inst.z);
  for (const auto strategy : {MpmdmStrategy::kAuto, MpmdmStrategy::kEnumerate,
                              MpmdmStrategy::kBranching}) {
    const auto k = solve_mpmdm(inst, {strategy, {}});
    EXPECT_EQ(k.size(), want);
    for (const auto& q : qs) EXPECT_GE(oracle::count(rows, q, k.bits()), inst.z);
  }
  int single_max = 0;
  for (const auto& q : queries) {
    single_max = std::max(single_max, solve_pmdm({inst.dictionary, q, inst.z}).size());
  }
  EXPECT_GE(want, single_max);
}

TEST_P(ExactProperties, OneQueryMultiEqualsSingle) {
  oracle::Rng rng(2000 + GetParam());
  const int l = oracle::uniform(rng, 1, 8);
  const int d = oracle::uniform(rng, 1, 20);
  const auto rows = oracle::random_words(rng, d, l, 3);
  const FixedString q(oracle::random_word(rng, l, 3));
  const auto dict = oracle::to_dictionary(rows);
  const auto z = static_cast<std::uint64_t>(oracle::uniform(rng, 1, d));
  EXPECT_EQ(solve_mpmdm({dict, {q}, z}).size(), solve_pmdm({dict, q, z}).size());
}

INSTANTIATE_TEST_SUITE_P(Seeds, ExactProperties, ::testing::Range(0, 60));

}  // namespace
}  // namespace pmdm
