#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "starclt/errors.hpp"
#include "starclt/set_partition.hpp"

using namespace starclt;

TEST(Kernel, LevelSets) {
  EXPECT_EQ(kernel(IndexTuple{1, 2, 1, 2}), SetPartition::parse("{{1,3},{2,4}}"));
  EXPECT_EQ(kernel(IndexTuple{7, 7, 7}), SetPartition::one_block(3));
  EXPECT_EQ(kernel(IndexTuple{5, 2, 9}), SetPartition::singletons(3));
  EXPECT_THROW(IndexTuple(std::vector<starclt::Index>{}), starclt::InvalidArgument);
  EXPECT_THROW(IndexTuple({1, 0}), starclt::InvalidArgument);
}

TEST(SetPartitionText, CanonicalRoundTrip) {
  auto p = SetPartition::parse("{{6,8},{3,7},{4,2},{1,5}}");
  EXPECT_EQ(p.to_string(), "{{1,5},{2,4},{3,7},{6,8}}");
  EXPECT_EQ(SetPartition::parse(p.to_string()), p);
  EXPECT_THROW(SetPartition::parse("{{1,2},{2,3}}"), starclt::Error);
}

TEST(Order, IsBelow) {
  EXPECT_TRUE(is_below(SetPartition::singletons(2), SetPartition::one_block(2)));
  EXPECT_FALSE(is_below(SetPartition::parse("{{1,2},{3,4}}"), SetPartition::parse("{{1,3},{2,4}}")));
  auto p = SetPartition::parse("{{1,3},{2},{4}}");
  EXPECT_TRUE(is_below(p, p));
  EXPECT_THROW(is_below(SetPartition::one_block(2), SetPartition::one_block(3)), starclt::GroundSetMismatch);
}

TEST(Pairings, BelowKernel) {
  auto below = pairings_below(kernel(IndexTuple{1, 2, 1, 2}));
  ASSERT_EQ(below.size(), 1U);
  EXPECT_EQ(below[0], PairPartition::parse("{{1,3},{2,4}}"));
  EXPECT_EQ(pairings_below(SetPartition::one_block(4)).size(), 3U);
  EXPECT_TRUE(pairings_below(SetPartition::parse("{{1,2,3},{4}}")).empty());
}

TEST(Pairings, CountsAreDoubleFactorials) {
  EXPECT_EQ(enumerate_pair_partitions(2).size(), 1U);
  EXPECT_EQ(enumerate_pair_partitions(4).size(), 3U);
  EXPECT_EQ(enumerate_pair_partitions(10).size(), 945U);
  EXPECT_TRUE(enumerate_pair_partitions(7).empty());
  for (unsigned h = 1; h <= 6; ++h) {
    auto all = enumerate_pair_partitions(2 * h);
    EXPECT_EQ(all.size(), oracle::double_factorial_odd(h));
    std::set<PairPartition> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
    EXPECT_EQ(all.size(), oracle::pairings(2 * h).size());
  }
}

TEST(Pairings, CanonicalPairWriting) {
  auto pi = PairPartition::parse("{{6,8},{3,7},{2,4},{1,5}}");
  std::vector<PairPartition::Pair> expected{{1, 5}, {2, 4}, {3, 7}, {6, 8}};
  EXPECT_EQ(pi.pairs(), expected);
  EXPECT_THROW(PairPartition::parse("{{1,2,3},{4,5,6}}"), starclt::InvalidArgument);
}

TEST(Pairings, NoncrossingCountIsCatalan) {
  EXPECT_TRUE(is_noncrossing(PairPartition::parse("{{1,4},{2,3}}")));
  EXPECT_FALSE(is_noncrossing(PairPartition::parse("{{1,3},{2,4}}")));
  EXPECT_TRUE(is_noncrossing(PairPartition::parse("{{1,2},{3,4}}")));
  for (unsigned h = 1; h <= 6; ++h) {
    std::size_t count = 0;
    for (const auto& pi : enumerate_pair_partitions(2 * h)) count += is_noncrossing(pi);
    EXPECT_EQ(count, oracle::catalan(h)) << "h=" << h;
  }
}

TEST(Restrict, Examples) {
  const Point a[] = {1, 3};
  EXPECT_EQ(restrict(SetPartition::parse("{{1,3},{2},{4}}"), a), SetPartition::one_block(2));
  auto pi = SetPartition::parse("{{1,5},{2,4},{3,7},{6,8}}");
  const Point all[] = {1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(restrict(pi, all), pi);
  const Point evens[] = {2, 4, 6, 8};
  EXPECT_EQ(restrict(pi, evens), SetPartition::parse("{{1,2},{3,4}}"));
  EXPECT_THROW(restrict(pi, std::span<const Point>{}), starclt::InvalidArgument);
}

TEST(Saturated, Examples) {
  auto pi = PairPartition::parse("{{1,2},{3,4}}");
  const Point a[] = {1, 2};
  const Point b[] = {1, 3};
  EXPECT_TRUE(is_saturated(pi, a));
  EXPECT_FALSE(is_saturated(pi, b));
  EXPECT_TRUE(is_saturated(pi, std::span<const Point>{}));
}

TEST(Partitions, BellCounts) {
  for (unsigned k = 1; k <= 9; ++k) EXPECT_EQ(enumerate_partitions(k).size(), oracle::bell(k)) << "k=" << k;
  EXPECT_THROW(enumerate_partitions(13), starclt::BudgetExceeded);
}

TEST(PartitionProperty, KernelAboveIffConstantOnBlocks) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 300; ++it) {
    const std::size_t h = 1 + rng() % 4;
    auto pi = random_pair_partition(h, rng);
    std::vector<starclt::Index> labels(2 * h);
    for (auto& x : labels) x = static_cast<starclt::Index>(1 + rng() % 3);
    bool constant = true;
    for (const auto& [a, b] : pi.pairs()) constant = constant && labels[a - 1] == labels[b - 1];
    EXPECT_EQ(is_below(pi.partition(), SetPartition::from_labels(labels)), constant);
  }
}

TEST(PartitionProperty, RestrictPreservesIntersectionSizes) {
  std::mt19937_64 rng(22);
  auto all = enumerate_partitions(6);
  for (int it = 0; it < 300; ++it) {
    const auto& pi = all[rng() % all.size()];
    std::vector<Point> subset;
    for (Point x = 1; x <= 6; ++x) {
      if (rng() % 2) subset.push_back(x);
    }
    if (subset.empty()) subset.push_back(1);
    std::multiset<std::size_t> expected;
    for (const auto& block : pi.blocks()) {
      std::size_t inside = 0;
      for (Point x : block) inside += std::count(subset.begin(), subset.end(), x);
      if (inside) expected.insert(inside);
    }
    std::multiset<std::size_t> actual;
    const auto restricted = restrict(pi, subset);
    for (const auto& block : restricted.blocks()) actual.insert(block.size());
    EXPECT_EQ(actual, expected);
  }
}
