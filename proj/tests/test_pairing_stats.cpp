#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "starclt/pairing_stats.hpp"

using namespace starclt;

namespace {

const PairPartition& eight_point_example() {
  static const auto pi = PairPartition::parse("{{1,5},{2,4},{3,7},{6,8}}");
  return pi;
}

std::vector<int> partner_array(const PairPartition& pi) {
  std::vector<int> partner(pi.ground_size());
  for (const auto& [a, b] : pi.pairs()) {
    partner[a - 1] = static_cast<int>(b) - 1;
    partner[b - 1] = static_cast<int>(a) - 1;
  }
  return partner;
}

}  // namespace

TEST(PairingPermutation, Examples) {
  EXPECT_EQ(pairing_permutation(PairPartition::parse("{{1,2}}")), Permutation::parse("(1,2)"));
  EXPECT_EQ(pairing_permutation(eight_point_example()), Permutation::parse("(1,5)(2,4)(3,7)(6,8)"));
  std::mt19937_64 rng(31);
  for (int it = 0; it < 50; ++it) {
    auto p = pairing_permutation(random_pair_partition(1 + rng() % 6, rng));
    EXPECT_TRUE((p * p).is_identity());
  }
}

TEST(Cycles, ForwardAndBackward) {
  EXPECT_TRUE(starclt::forward_cycle(1).is_identity());
  EXPECT_EQ(starclt::forward_cycle(2), Permutation::star_generator(1));
  auto c4 = starclt::forward_cycle(4);
  EXPECT_EQ(c4(1), 2U);
  EXPECT_EQ(c4(2), 3U);
  EXPECT_EQ(c4(3), 4U);
  EXPECT_EQ(c4(4), 1U);
  EXPECT_TRUE((c4 * starclt::backward_cycle(4)).is_identity());
}

TEST(QPermutation, Examples) {
  EXPECT_EQ(q_permutation(eight_point_example()), Permutation::parse("(3,4,5)"));
  EXPECT_TRUE(q_permutation(PairPartition::parse("{{1,2}}")).is_identity());
  EXPECT_TRUE(q_permutation(PairPartition::parse("{{1,6},{2,3},{4,5}}")).is_identity());
  EXPECT_EQ(q_permutation(PairPartition::parse("{{1,3},{2,4}}")), Permutation::parse("(1,2,3)"));
}

TEST(Exponents, Examples) {
  EXPECT_EQ(u_exponent(eight_point_example()), 2U);
  EXPECT_EQ(v_exponent(eight_point_example()), 2U);
  EXPECT_EQ(u_exponent(PairPartition::parse("{{1,3},{2,4}}")), 2U);
  EXPECT_EQ(v_exponent(PairPartition::parse("{{1,3},{2,4}}")), 2U);
  EXPECT_EQ(u_exponent(PairPartition::parse("{{1,4},{2,3}}")), 0U);
  EXPECT_EQ(v_exponent(PairPartition::parse("{{1,4},{2,3}}")), 0U);
  auto stats = starclt::PairingStatistics::of(eight_point_example());
  EXPECT_EQ(stats.q_pi, Permutation::parse("(3,4,5)"));
  EXPECT_EQ(stats.u_exponent, stats.v_exponent);
}

TEST(VOfPartition, Examples) {
  const Rational q = starclt::make_rational(1, 3);
  EXPECT_EQ(v_of_partition(SetPartition::one_block(4), q), 2 + q * q);
  EXPECT_EQ(v_of_partition(SetPartition::parse("{{1,2,3},{4}}"), q), 0);
  EXPECT_EQ(v_of_partition(SetPartition::one_block(2), q), 1);
}

TEST(Lemmas, EightPointExample) {
  EXPECT_TRUE(check_exponent_identity(eight_point_example()));
  EXPECT_TRUE(check_conjugacy_lemma(eight_point_example()));
  EXPECT_TRUE(check_orbit_lemma(eight_point_example()));
  EXPECT_TRUE(check_conjugacy_lemma(PairPartition::parse("{{1,2}}")));
}

TEST(ExponentIdentity, ExhaustiveUpToTenPoints) {
  for (unsigned h = 1; h <= 5; ++h) {
    for (const auto& pi : starclt::enumerate_pair_partitions(2 * h)) {
      const auto u = u_exponent(pi);
      EXPECT_EQ(u, v_exponent(pi)) << pi;
      EXPECT_EQ(u == 0, is_noncrossing(pi)) << pi;
      EXPECT_TRUE(check_conjugacy_lemma(pi)) << pi;
      EXPECT_TRUE(check_orbit_lemma(pi)) << pi;
      EXPECT_TRUE(check_orbit_extension(pi)) << pi;
    }
  }
}

TEST(ExponentIdentity, MatchesArrayOracle) {
  for (unsigned h = 1; h <= 4; ++h) {
    for (const auto& pi : starclt::enumerate_pair_partitions(2 * h)) {
      auto partner = partner_array(pi);
      EXPECT_EQ(static_cast<int>(u_exponent(pi)), oracle::u_exponent(partner)) << pi;
      EXPECT_EQ(static_cast<int>(v_exponent(pi)), oracle::v_exponent(partner)) << pi;
    }
  }
}

TEST(ExponentIdentity, RandomLargePairings) {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 300; ++it) {
    auto pi = random_pair_partition(6 + rng() % 3, rng);
    EXPECT_TRUE(check_exponent_identity(pi)) << pi;
    EXPECT_TRUE(check_conjugacy_lemma(pi)) << pi;
    EXPECT_TRUE(check_orbit_lemma(pi)) << pi;
    EXPECT_EQ(static_cast<int>(v_exponent(pi)), oracle::v_exponent(partner_array(pi))) << pi;
  }
}
