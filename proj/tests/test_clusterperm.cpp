// Copyright 2026 The Permweaver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "permweaver/clusterperm.hpp"
#include "permweaver/errors.hpp"
#include "test_util.hpp"

namespace permweaver {
namespace {

SparseState uniform_state(const std::vector<std::string>& labels) {
  std::vector<SparseEntry> e;
  const double a = 1.0 / std::sqrt(static_cast<double>(labels.size()));
  for (const auto& l : labels) e.push_back({BitLabel::parse(l), a});
  return SparseState(static_cast<int>(labels.front().size()), std::move(e));
}

std::size_t count_in(const Pattern& p, const std::vector<Word>& labels) {
  return static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), [&](Word w) { return p.contains(w); }));
}

void expect_valid_cover(const SparseState& state) {
  const Pattern root = find_initial_shc(state);
  ASSERT_EQ(root.num_spanned(), ceil_log2(state.size()));
  const SplitTree tree = cover_with_shcs(state, root);
  EXPECT_LE(tree.splits, 2 * static_cast<int>(state.size()));

  // Every label in exactly one leaf; leaf homes disjoint and inside the root.
  std::map<Word, int> owners;
  for (int leaf : tree.leaves) {
    const auto& node = tree.nodes[static_cast<std::size_t>(leaf)];
    EXPECT_EQ(node.current.num_spanned(), node.home.num_spanned());
    EXPECT_EQ(node.home.fixed_mask() & root.fixed_mask(), root.fixed_mask());
    EXPECT_EQ(node.home.value() & root.fixed_mask(), root.value());
    for (Word w : node.covered) {
      EXPECT_TRUE(node.current.contains(w));
      ++owners[w];
    }
  }
  for (Word w : state.label_words()) EXPECT_EQ(owners[w], 1);

  const auto spec = recover_permutation(tree, state);
  ASSERT_EQ(spec.size(), state.size());
  std::set<Word> sources;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& p = spec.pairs()[i];
    EXPECT_TRUE(root.contains(p.source.bits()));
    EXPECT_EQ(p.destination, state.entries()[i].label);
    sources.insert(p.source.bits());
  }
  EXPECT_EQ(sources.size(), spec.size());

  // Within a leaf the map is an XOR plus a reindexing of spanned bits, so
  // Hamming distances between covered labels are preserved.
  std::map<Word, Word> source_of;
  for (const auto& p : spec.pairs()) source_of[p.destination.bits()] = p.source.bits();
  for (int leaf : tree.leaves) {
    const auto& cov = tree.nodes[static_cast<std::size_t>(leaf)].covered;
    for (Word a : cov) {
      for (Word b : cov) {
        EXPECT_EQ(std::popcount(a ^ b), std::popcount(source_of[a] ^ source_of[b]));
      }
    }
  }
}

TEST(GreedyDenseShc, KeepsTheFullCluster) {
  const auto s = uniform_state({"0000", "0001", "0010", "0111", "0101", "0011", "0100", "0110"});
  EXPECT_EQ(find_initial_shc(s).str(), "0***");
}

TEST(GreedyDenseShc, DenseStateGivesAllWildcards) {
  const auto s = uniform_state({"00", "01", "10", "11"});
  EXPECT_EQ(find_initial_shc(s), Pattern::all_wildcards(2));
}

TEST(GreedyDenseShc, TieGoesToHigherAdjacency) {
  // 0** and *1* both keep two labels; only *1* keeps an adjacent pair.
  const std::vector<Word> labels{BitLabel::parse("000").bits(), BitLabel::parse("011").bits(),
                                 BitLabel::parse("111").bits()};
  const Pattern p = greedy_dense_shc(labels, 3, 2);
  EXPECT_EQ(p.str(), "*1*");
  EXPECT_EQ(count_in(p, labels), 2U);
  std::vector<Word> kept;
  for (Word w : labels) {
    if (p.contains(w)) kept.push_back(w);
  }
  EXPECT_EQ(avg_adjacent_nonzero_words(kept), (Rational{1, 1}));
}

TEST(GreedyDenseShc, LocallyOptimalAtTheLastStep) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = testing::random_state(rng, 8, 16);
    const auto labels = s.label_words();
    const Pattern p = find_initial_shc(s);
    ASSERT_EQ(p.num_spanned(), 4);
    const std::size_t got = count_in(p, labels);
    // Some fixed dimension must be a last step that no alternative beats.
    bool found = false;
    for (int d : p.fixed_dims()) {
      const Pattern parent(8, p.fixed_mask() & ~bit_of(d), p.value() & ~bit_of(d));
      bool best = true;
      for (int e : parent.spanned_dims()) {
        for (bool v : {false, true}) best = best && count_in(parent.with_fixed(e, v), labels) <= got;
      }
      found = found || best;
    }
    EXPECT_TRUE(found) << p.str();
  }
}

TEST(CoverWithShcs, RootAlreadyCoversEverything) {
  const auto s = uniform_state({"1000", "1001", "1011"});
  const auto root = find_initial_shc(s);
  const auto tree = cover_with_shcs(s, root);
  EXPECT_EQ(tree.splits, 0);
  ASSERT_EQ(tree.leaves.size(), 1U);
  const auto spec = recover_permutation(tree, s);
  for (const auto& p : spec.pairs()) EXPECT_EQ(p.source, p.destination);
}

TEST(CoverWithShcs, EmptyHalfRelocatesOntoRemainingCluster) {
  // The root covers one cluster of two in its first half; the other pair
  // sits outside the root.
  const auto s = uniform_state({"0000", "0001", "1110", "1111"});
  const auto root = find_initial_shc(s);
  ASSERT_EQ(root.str(), "00**");
  const auto tree = cover_with_shcs(s, root);
  EXPECT_EQ(tree.splits, 1);
  EXPECT_EQ(tree.relocations, 1);
  ASSERT_EQ(tree.leaves.size(), 2U);
  const auto& kept = tree.nodes[static_cast<std::size_t>(tree.leaves[0])];
  const auto& moved = tree.nodes[static_cast<std::size_t>(tree.leaves[1])];
  EXPECT_EQ(kept.current.str(), "000*");
  EXPECT_FALSE(kept.relocated);
  EXPECT_TRUE(moved.relocated);
  EXPECT_EQ(moved.current.str(), "111*");
  EXPECT_EQ(moved.home.str(), "001*");

  const auto spec = recover_permutation(tree, s);
  std::map<std::string, std::string> m;
  for (const auto& p : spec.pairs()) m[p.destination.str()] = p.source.str();
  EXPECT_EQ(m["0000"], "0000");
  EXPECT_EQ(m["0001"], "0001");
  EXPECT_EQ(m["1110"], "0010");
  EXPECT_EQ(m["1111"], "0011");
}

TEST(RecoverPermutation, RelocatedLeafMapsIntoItsHome) {
  const auto s = uniform_state({"0000", "0001", "1100", "1101"});
  SplitTree t;
  t.nodes.push_back({Pattern::parse("00**"), Pattern::parse("00**"), -1, {1, 2}, {}, false});
  t.nodes.push_back(
      {Pattern::parse("000*"), Pattern::parse("000*"), 0, {}, {BitLabel::parse("0000").bits(), BitLabel::parse("0001").bits()}, false});
  t.nodes.push_back(
      {Pattern::parse("110*"), Pattern::parse("001*"), 0, {}, {BitLabel::parse("1100").bits(), BitLabel::parse("1101").bits()}, true});
  t.leaves = {1, 2};
  t.splits = 1;
  t.relocations = 1;
  const auto spec = recover_permutation(t, s);
  std::map<std::string, std::string> m;
  for (const auto& p : spec.pairs()) m[p.destination.str()] = p.source.str();
  EXPECT_EQ(m["1100"], "0010");
  EXPECT_EQ(m["1101"], "0011");
  EXPECT_EQ(m["0000"], "0000");
}

TEST(RecoverPermutation, PositionChangeUsesAscendingOrder) {
  // The relocated leaf spans position 0; its home spans position 3.
  const auto s = uniform_state({"0000", "0001", "0110", "1110"});
  SplitTree t;
  t.nodes.push_back({Pattern::parse("00**"), Pattern::parse("00**"), -1, {1, 2}, {}, false});
  t.nodes.push_back(
      {Pattern::parse("000*"), Pattern::parse("000*"), 0, {}, {BitLabel::parse("0000").bits(), BitLabel::parse("0001").bits()}, false});
  t.nodes.push_back(
      {Pattern::parse("*110"), Pattern::parse("001*"), 0, {}, {BitLabel::parse("0110").bits(), BitLabel::parse("1110").bits()}, true});
  t.leaves = {1, 2};
  const auto spec = recover_permutation(t, s);
  std::map<std::string, std::string> m;
  for (const auto& p : spec.pairs()) m[p.destination.str()] = p.source.str();
  EXPECT_EQ(m["0110"], "0010");
  EXPECT_EQ(m["1110"], "0011");
}

TEST(RecoverPermutation, RejectsUncoveredAndDoubleCoverage) {
  const auto s = uniform_state({"00", "01"});
  SplitTree t;
  t.nodes.push_back({Pattern::parse("0*"), Pattern::parse("0*"), -1, {}, {BitLabel::parse("00").bits()}, false});
  t.leaves = {0};
  EXPECT_THROW(recover_permutation(t, s), StateError);
  t.nodes[0].covered = {BitLabel::parse("00").bits(), BitLabel::parse("01").bits(), BitLabel::parse("00").bits()};
  EXPECT_THROW(recover_permutation(t, s), StateError);
}

TEST(CoverWithShcs, FuzzedStatesProduceValidCovers) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const std::size_t m = 1 + rng() % std::min<std::uint64_t>(40, std::uint64_t{1} << n);
    expect_valid_cover(testing::random_state(rng, n, m));
  }
}

}  // namespace
}  // namespace permweaver
