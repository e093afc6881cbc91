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

#include "pmdm/heuristic.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace pmdm {
namespace {

FixedString fs(std::string_view s) { return FixedString::from_utf8(s); }

Dictionary t1() {
  return Dictionary::from_strings({"abab", "abbb", "aaaa", "bbab", "abaa"});
}

std::uint64_t bits(std::initializer_list<int> positions) {
  std::uint64_t b = 0;
  for (const int p : positions) b |= std::uint64_t{1} << (p - 1);
  return b;
}

// Score of node u, recomputed from its definition as a reduced fraction
// compared by cross-multiplication.
std::pair<std::uint64_t, std::uint64_t> score_of(const oracle::RawHypergraph& h,
                                                 int u) {
  std::uint64_t count = 0, weight = 0, sizes = 0;
  for (const auto& [k, w] : h.edges) {
    if (!((k >> (u - 1)) & 1u)) continue;
    ++count;
    weight += w;
    sizes += std::popcount(k);
  }
  return {count * weight, sizes};
}

TEST(Preprocess, NoWorkWhenSmallEdgeExists) {
  HypergraphBuilder<std::uint64_t> b(4, 0);
  b.add(bits({2}), 1);
  b.add(bits({1, 3, 4}), 5);
  const auto h = std::move(b).build();
  const auto r = preprocess(h, 1);
  EXPECT_TRUE(r.removed.empty());
  EXPECT_EQ(r.graph.edge_count(), 2u);
}

TEST(Preprocess, RemovesHighestScoringNode) {
  oracle::RawHypergraph raw;
  raw.length = 3;
  raw.edges = {{bits({1, 2}), 1}, {bits({1, 3}), 3}};
  // s(1) = 2*4/4 = 2, s(2) = 1/2, s(3) = 3/2.
  EXPECT_EQ(score_of(raw, 1), (std::pair<std::uint64_t, std::uint64_t>{8, 4}));
  const auto r = preprocess(raw.build(), 1);
  EXPECT_EQ(r.removed.positions(), (std::vector<int>{1}));
  ASSERT_EQ(r.graph.edge_count(), 2u);
  EXPECT_EQ(*r.graph.find(bits({2})), 1u);
  EXPECT_EQ(*r.graph.find(bits({3})), 3u);
}

TEST(Preprocess, TiesGoToSmallestPosition) {
  HypergraphBuilder<std::uint64_t> b(3, 0);
  b.add(bits({1, 2, 3}), 1);
  const auto r = preprocess(std::move(b).build(), 1);
  EXPECT_EQ(r.removed.positions(), (std::vector<int>{1, 2}));
  EXPECT_EQ(*r.graph.find(bits({3})), 1u);
}

TEST(Preprocess, MergesCollidingEdgesAndEmptiedEdgesJoinBase) {
  HypergraphBuilder<std::uint64_t> b(3, 0);
  b.add_base(1);
  b.add(bits({1, 2}), 4);
  b.add(bits({2, 3}), 2);
  b.add(bits({1, 2, 3}), 1);
  const auto r = preprocess(std::move(b).build(), 1);
  // Node 2 lies on every edge and scores highest.
  EXPECT_EQ(r.removed.positions(), (std::vector<int>{2}));
  EXPECT_EQ(*r.graph.find(bits({1})), 4u);
  EXPECT_EQ(*r.graph.find(bits({3})), 2u);
  EXPECT_EQ(*r.graph.find(bits({1, 3})), 1u);
  EXPECT_EQ(r.graph.base(), 1u);
}

TEST(Preprocess, EmptyGraphUnchanged) {
  HypergraphBuilder<std::uint64_t> b(3, 0);
  b.add_base(2);
  const auto r = preprocess(std::move(b).build(), 2);
  EXPECT_TRUE(r.removed.empty());
  EXPECT_EQ(r.graph.base(), 2u);
}

TEST(Greedy, SmallDictionaryIsOptimal) {
  const auto r = greedy_pmdm({t1(), fs("abab"), 4});
  EXPECT_EQ(r.mask.size(), 3);
  EXPECT_GE(count_matches(t1(), mask_apply(fs("abab"), r.mask)), 4u);
  EXPECT_EQ(r.iterations, 1);
}

TEST(Greedy, FullMaskWhenEverythingMustMatch) {
  const auto d = Dictionary::from_strings({"aaaaa", "bbbbb", "aabba"});
  GreedyConfig cfg;
  cfg.tau = 2;
  const auto r = greedy_pmdm({d, fs("aaaaa"), 3}, cfg);
  EXPECT_EQ(r.mask, MaskSet::full(5));
}

TEST(Greedy, ExactMatchNeedsNoIterations) {
  const auto r = greedy_pmdm({t1(), fs("abab"), 1});
  EXPECT_TRUE(r.mask.empty());
  EXPECT_EQ(r.iterations, 0);
}

TEST(Greedy, Errors) {
  EXPECT_THROW(greedy_pmdm({t1(), fs("abab"), 6}), InfeasibleThreshold);
  GreedyConfig cfg;
  cfg.tau = 0;
  EXPECT_THROW(greedy_pmdm({t1(), fs("abab"), 2}, cfg), ContractError);
}

TEST(Baseline, SmallDictionary) {
  // Node 4 lies on {4} and {2,4}: score 2*2/3 beats 1 for nodes 1 and 3.
  const auto r = baseline_pmdm({t1(), fs("abab"), 2});
  EXPECT_EQ(r.mask.size(), 1);
  EXPECT_EQ(r.mask.positions(), (std::vector<int>{4}));
  EXPECT_GE(count_matches(t1(), mask_apply(fs("abab"), r.mask)), 2u);
}

TEST(Baseline, ExactMatchReturnsEmpty) {
  EXPECT_TRUE(baseline_pmdm({t1(), fs("abab"), 1}).mask.empty());
}

class HeuristicProperties : public ::testing::TestWithParam<int> {};

TEST_P(HeuristicProperties, FeasibleNeverBelowOptimumAndExactUpToTau) {
  oracle::Rng rng(GetParam());
  const int l = oracle::uniform(rng, 1, 10);
  const int d = oracle::uniform(rng, 1, 40);
  const auto rows = oracle::random_words(rng, d, l, oracle::uniform(rng, 2, 4));
  const FixedString q(oracle::random_word(rng, l, 3));
  const auto z = static_cast<std::uint64_t>(oracle::uniform(rng, 1, d));
  const PmdmInstance inst{oracle::to_dictionary(rows), q, z};
  const int opt = oracle::min_mask_size(rows, q.str(), z);
  for (int tau = 1; tau <= 5; ++tau) {
    for (const auto score : {NodeScore::kDefault, NodeScore::kWeightPerSize}) {
      GreedyConfig cfg;
      cfg.tau = tau;
      cfg.score = score;
      const auto g = greedy_pmdm(inst, cfg);
      EXPECT_GE(oracle::count(rows, q.str(), g.mask.bits()), z);
      EXPECT_GE(g.mask.size(), opt);
      if (opt <= tau) {
        EXPECT_EQ(g.mask.size(), opt) << "tau=" << tau;
      }
      EXPECT_LE(g.iterations, (l + tau - 1) / tau);
    }
  }
  const auto b = baseline_pmdm(inst);
  EXPECT_GE(oracle::count(rows, q.str(), b.mask.bits()), z);
  EXPECT_GE(b.mask.size(), opt);
}

INSTANTIATE_TEST_SUITE_P(Seeds, HeuristicProperties, ::testing::Range(0, 150));

}  // namespace
}  // namespace pmdm
