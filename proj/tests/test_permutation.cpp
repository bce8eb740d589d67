#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "starclt/errors.hpp"
#include "starclt/permutation.hpp"

using starclt::Permutation;
using starclt::Point;

namespace {

constexpr int kIterations = 200;

Permutation random_permutation(std::mt19937_64& rng, Point n) {
  std::vector<Point> images(n);
  for (Point x = 0; x < n; ++x) images[x] = x + 1;
  std::shuffle(images.begin(), images.end(), rng);
  std::vector<Permutation::Mapping> table;
  for (Point x = 1; x <= n; ++x) table.emplace_back(x, images[x - 1]);
  return Permutation::from_mapping(table);
}

oracle::Perm to_array(const Permutation& p, int n) {
  oracle::Perm a(n);
  for (int x = 0; x < n; ++x) a[x] = static_cast<int>(p(x + 1)) - 1;
  return a;
}

}  // namespace

TEST(Permutation, IdentityIsEmpty) {
  Permutation e;
  EXPECT_TRUE(e.is_identity());
  EXPECT_EQ(e.to_string(), "()");
  EXPECT_EQ(e.length(), 0U);
  EXPECT_EQ(e(17), 17U);
}

TEST(Permutation, ComposeAppliesRightFactorFirst) {
  auto a = Permutation::parse("(1,2)");
  auto b = Permutation::parse("(1,3)");
  EXPECT_TRUE(compose(a, a).is_identity());
  EXPECT_EQ(compose(a, b), Permutation::parse("(1,3,2)"));
  EXPECT_EQ(compose(b, Permutation{}), b);
  EXPECT_EQ(Permutation::parse("(1,2,3,4)") * Permutation::parse("(1,3)(2,4)"), Permutation::parse("(4,3,2,1)"));
}

TEST(Permutation, StarGenerators) {
  EXPECT_EQ(Permutation::star_generator(1), Permutation::parse("(1,2)"));
  EXPECT_EQ(Permutation::star_generator(2), Permutation::parse("(1,3)"));
  auto g5 = Permutation::star_generator(5);
  EXPECT_EQ(g5(6), 1U);
  EXPECT_EQ(g5(1), 6U);
  for (Point x = 2; x <= 5; ++x) EXPECT_EQ(g5(x), x);
  EXPECT_THROW(Permutation::star_generator(0), starclt::InvalidArgument);
}

TEST(Permutation, Length) {
  EXPECT_EQ(Permutation::parse("(1,2)").length(), 1U);
  EXPECT_EQ(Permutation::parse("(3,4,5)").length(), 2U);
  EXPECT_EQ(Permutation::parse("(1,2)(3,4,5,6)").length(), 4U);
}

TEST(Permutation, OrbitCount) {
  const Point all3[] = {1, 2, 3};
  const Point all4[] = {1, 2, 3, 4};
  EXPECT_EQ(orbit_count(Permutation{}, all3), 3U);
  EXPECT_EQ(orbit_count(Permutation::parse("(1,2)(3,4)"), all4), 2U);
  auto word = Permutation::parse("(1,2,3,4)") * Permutation::parse("(1,3)(2,4)");
  EXPECT_EQ(orbit_count(word, all4), 1U);
  const Point not_invariant[] = {1, 3};
  EXPECT_THROW(orbit_count(Permutation::parse("(1,2)"), not_invariant), starclt::NotInvariantError);
}

TEST(Permutation, InducedPermutation) {
  const Point a[] = {1, 3};
  auto induced = induced_permutation(Permutation::parse("(1,2,3)"), a);
  EXPECT_EQ(induced, Permutation::parse("(1,3)"));
  const Point b[] = {2, 5, 7};
  EXPECT_TRUE(induced_permutation(Permutation{}, b).is_identity());
}

TEST(Permutation, Conjugate) {
  EXPECT_EQ(conjugate(Permutation::parse("(1,2)"), Permutation::parse("(2,3)")), Permutation::parse("(1,3)"));
  auto p = Permutation::parse("(1,4)(2,7,3)");
  EXPECT_EQ(conjugate(p, Permutation{}), p);
}

TEST(Permutation, ParseAndCycles) {
  auto p = Permutation::parse("(5,2,4)(7,1)");
  EXPECT_EQ(p.to_string(), "(1,7)(2,4,5)");
  EXPECT_EQ(Permutation::from_cycles(p.cycles()), p);
  EXPECT_EQ(Permutation::parse(p.to_string()), p);
  EXPECT_THROW(Permutation::parse("(1,2"), starclt::ParseError);
  EXPECT_THROW(Permutation::parse("(1,1)"), starclt::ParseError);
  EXPECT_THROW(Permutation::from_cycles({{1, 2}, {2, 3}}), starclt::InvalidArgument);
}

TEST(PermutationProperty, AgreesWithArrayOracle) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < kIterations; ++it) {
    const Point n = 1 + rng() % 9;
    auto p = random_permutation(rng, n);
    auto q = random_permutation(rng, n);
    EXPECT_EQ(to_array(p * q, n), oracle::compose(to_array(p, n), to_array(q, n)));
    EXPECT_EQ(static_cast<int>(p.length()), oracle::length(to_array(p, n)));
  }
}

TEST(PermutationProperty, LengthInvariants) {
  std::mt19937_64 rng(12);
  for (int it = 0; it < kIterations; ++it) {
    const Point n = 1 + rng() % 9;
    auto p = random_permutation(rng, n);
    auto q = random_permutation(rng, n);
    EXPECT_EQ((p * q).length(), (q * p).length());
    EXPECT_LE((p * q).length(), p.length() + q.length());
    std::size_t by_cycles = 0;
    for (const auto& c : p.cycles()) by_cycles += c.size() - 1;
    EXPECT_EQ(p.length(), by_cycles);
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_EQ(conjugate(p, q).length(), p.length());
    EXPECT_EQ(conjugate(p, q), q * p * q.inverse());
  }
}

TEST(PermutationProperty, InducedOnInvariantSetIsRestriction) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < kIterations; ++it) {
    const Point n = 2 + rng() % 8;
    auto p = random_permutation(rng, n);
    auto cycles = p.cycles();
    if (cycles.empty()) continue;
    const auto& cycle = cycles[rng() % cycles.size()];
    auto induced = induced_permutation(p, cycle);
    for (Point x : cycle) EXPECT_EQ(induced(x), p(x));
  }
}
