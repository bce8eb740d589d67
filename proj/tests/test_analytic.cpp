#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "oracles.hpp"
#include "starclt/analytic.hpp"

using namespace starclt;

namespace {

TruncatedSeries univariate(unsigned cap, std::vector<Rational> c) { return TruncatedSeries::univariate(cap, c); }

}  // namespace

TEST(QPolynomial, Examples) {
  EXPECT_EQ(q_polynomial(1, 12), univariate(12, {1}));
  EXPECT_EQ(q_polynomial(2, 12), univariate(12, {1, 0, make_rational(1, 4)}));
  EXPECT_EQ(q_polynomial(3, 12), univariate(12, {1, 0, make_rational(1, 3), 0, make_rational(1, 54)}));
}

TEST(Series, ExpInverse) {
  TruncatedSeries a(2, 8);
  a.add_term({1, 0}, make_rational(1, 3));
  a.add_term({1, 1}, make_rational(-2, 5));
  a.add_term({0, 3}, 7);
  auto product = a.exp() * (a * Rational(-1)).exp();
  EXPECT_EQ(product, TruncatedSeries::constant(2, 8, 1));
}

TEST(Series, ExpOfMonomialMatchesFactorials) {
  auto e = TruncatedSeries::monomial(1, 10, 1, 1).exp();
  for (unsigned k = 0; k <= 10; ++k) EXPECT_EQ(e.coefficient(k), Rational(1) / Rational(factorial(k)));
  EXPECT_THROW(TruncatedSeries::constant(1, 4, 1).exp(), InvalidArgument);
}

TEST(Series, TruncationAndComposition) {
  auto z = TruncatedSeries::monomial(1, 3, 1, 2);
  EXPECT_TRUE((z * z).terms().empty());
  auto f = univariate(6, {1, 2, 3});
  auto g = compose_with_sum_of_squares(f, 2, 4);
  // 1 + 2(x^2 + y^2) + 3(x^2 + y^2)^2
  EXPECT_EQ(g.coefficient({2, 0}), 2);
  EXPECT_EQ(g.coefficient({2, 2}), 6);
  EXPECT_EQ(g.coefficient({0, 4}), 3);
  EXPECT_EQ(g.coefficient({1, 1}), 0);
}

TEST(NuEgf, Moments) {
  for (std::int64_t d = 1; d <= 5; ++d) {
    auto m = nu_egf(d, 12).moments(12);
    const Rational inv_d2 = make_rational(1, d * d);
    EXPECT_EQ(m[0], 1);
    EXPECT_EQ(m[2], 1);
    EXPECT_EQ(m[4], 2 + inv_d2);
    EXPECT_EQ(m[6], 5 + 10 * inv_d2);
    for (unsigned k = 0; k <= 12; ++k) {
      EXPECT_EQ(m[k], nu_moment(k, d)) << "d=" << d << " k=" << k;
      if (k % 2 == 0) EXPECT_EQ(m[k], oracle::nu_moment(d, k / 2));
    }
  }
}

TEST(MuEgf, Moments) {
  EXPECT_EQ(mu_egf(1, 12), TruncatedSeries::constant(1, 12, 1));
  auto m2 = mu_egf(2, 12).moments(4);
  EXPECT_EQ(m2[2], make_rational(3, 4));
  EXPECT_EQ(m2[4], make_rational(15, 16));
  for (std::int64_t d = 1; d <= 6; ++d) {
    auto m = mu_egf(d, 12).moments(12);
    EXPECT_EQ(m[2], 1 - make_rational(1, d * d));
    for (unsigned j = 0; j <= 6; ++j) EXPECT_EQ(m[2 * j], oracle::mu_moment(d, j));
    for (unsigned k = 1; k <= 11; k += 2) EXPECT_EQ(m[k], 0);
  }
}

TEST(MuEgf, MatchesPartitionSums) {
  for (std::int64_t d = 1; d <= 4; ++d) {
    PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter::from_dimension(d)));
    auto m = mu_egf(d, 8).moments(8);
    for (unsigned j = 0; j <= 4; ++j) EXPECT_EQ(alpha_coefficient(t, j), m[2 * j]) << "d=" << d << " m=" << j;
  }
}

// 10395 pairings of twelve points per dimension; the slowest test in the suite.
TEST(MuEgf, MatchesPartitionSumsAtOrderTwelve) {
  for (std::int64_t d = 1; d <= 4; ++d) {
    PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter::from_dimension(d)));
    EXPECT_EQ(alpha_coefficient(t, 6), mu_egf(d, 12).moments(12)[12]) << "d=" << d;
  }
}

TEST(Convolution, Examples) {
  auto mu = mu_egf(2, 4).moments(4);
  auto conv = convolve_moments(mu, gaussian_moments(make_rational(1, 4), 4), 4);
  EXPECT_EQ(conv[4], make_rational(9, 4));
  auto same = convolve_moments(mu, gaussian_moments(0, 4), 4);
  EXPECT_EQ(same, mu);
  EXPECT_EQ(conv[1], 0);
  EXPECT_EQ(conv[3], 0);
  EXPECT_THROW(convolve_moments(mu, mu, 5), InvalidArgument);
}

TEST(Convolution, ReproducesNu) {
  for (std::int64_t d = 1; d <= 5; ++d) EXPECT_TRUE(convolution_check(d, 12).passed()) << "d=" << d;
}

TEST(Density, LowDimensions) {
  auto p2 = density_polynomial(2);
  EXPECT_EQ(p2.coefficients, (std::vector<Rational>{0, 4}));
  auto p3 = density_polynomial(3);
  EXPECT_EQ(p3.coefficients,
            (std::vector<Rational>{make_rational(20, 32), make_rational(-108, 32), make_rational(243, 32)}));
  auto p4 = density_polynomial(4);
  EXPECT_EQ(p4.coefficients, (std::vector<Rational>{make_rational(405, 2187), make_rational(12960, 2187),
                                                     make_rational(-36864, 2187), make_rational(32768, 2187)}));
  EXPECT_THROW(density_polynomial(1), DiracMassError);
  EXPECT_THROW(density_polynomial(0), InvalidArgument);
}

TEST(Density, UnitPrefactorReading) {
  EXPECT_EQ(unit_prefactor_density_coefficients(2), (std::vector<Rational>{0, 8}));
  EXPECT_THROW(unit_prefactor_density_coefficients(3), InvalidArgument);
  auto r5 = unit_prefactor_density_coefficients(5);
  auto p5 = density_polynomial(5);
  for (std::size_t j = 0; j < r5.size(); ++j) EXPECT_EQ(r5[j], p5.coefficients[j] * make_rational(5, 2));
}

TEST(Density, MomentsMatchBeyondTheSolvedRange) {
  for (std::int64_t d = 2; d <= 6; ++d) {
    auto p = density_polynomial(d);
    const unsigned top = 2 * static_cast<unsigned>(d) + 2;
    auto mu = mu_egf(d, 2 * top).moments(2 * top);
    EXPECT_EQ(p.expectation(0), 1);
    for (unsigned m = 0; m <= top; ++m) EXPECT_EQ(p.expectation(m), mu[2 * m]) << "d=" << d << " m=" << m;
  }
}

TEST(Density, IntegratesToOne) {
  auto p = density_polynomial(3);
  double mass = 0.0;
  const double h = 1e-3;
  for (double t = -6.0; t < 6.0; t += h) mass += p.density(t + h / 2) * h;
  EXPECT_NEAR(mass, 1.0, 1e-6);
  for (double t = -3.0; t <= 3.0; t += 0.01) EXPECT_GE(p.density(t), -1e-12);
}

TEST(MultivariateEgf, Examples) {
  MomentTable table(2, 2);
  table.set({1}, 0);
  table.set({2}, 0);
  table.set({1, 1}, 3);
  table.set({1, 2}, 5);
  table.set({2, 1}, 7);
  table.set({2, 2}, 0);
  auto f = multivariate_egf(table, 2);
  EXPECT_EQ(f.coefficient({1, 1}), Rational(12) / 2);
  EXPECT_EQ(f.coefficient({2, 0}), make_rational(3, 2));
  EXPECT_EQ(f.constant_term(), 1);

  MomentTable zeros(2, 3);
  for (unsigned k = 1; k <= 3; ++k) for_each_tuple(2, k, [&](const std::vector<Index>& t) { zeros.set(t, 0); });
  EXPECT_EQ(multivariate_egf(zeros, 3), TruncatedSeries::constant(2, 3, 1));

  MomentTable incomplete(2, 2);
  incomplete.set({1}, 0);
  EXPECT_THROW(multivariate_egf(incomplete, 2), InvalidArgument);
}

TEST(MultivariateEgf, OneVariableIsOrdinaryEgf) {
  PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter::from_dimension(2)));
  auto f = multivariate_egf(multivariate_limit_moments(t, 1, 8), 8);
  EXPECT_EQ(f, mu_egf(2, 8));
}

TEST(MultivariateEgf, SumOfSquaresForm) {
  for (std::int64_t d : {2, 3}) {
    PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter::from_dimension(d)));
    EXPECT_TRUE(sum_of_squares_check(t, 2, 6).passed());
    EXPECT_TRUE(sum_of_squares_check(t, 3, 4).passed());
  }
}

TEST(MultivariateConvolution, SmallCases) {
  EXPECT_TRUE(multivariate_convolution_check(1, 2, 8));
  EXPECT_TRUE(multivariate_convolution_check(2, 2, 6));
  EXPECT_TRUE(multivariate_convolution_check(2, 3, 6));
  EXPECT_TRUE(multivariate_convolution_check(3, 2, 4));
}

TEST(Translation, CanonicalTraceHasNoGaussianFactor) {
  // At q = 0 the shift vanishes and the raw and centered generators coincide.
  EXPECT_TRUE(star_translation_check(0, 4).passed());
  PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter{0}));
  PartitionFunction u(std::make_shared<StarGeneratorOracle>(CharacterParameter{0}));
  for (unsigned m = 0; m <= 4; ++m) EXPECT_EQ(pairing_sum(t, m), pairing_sum(u, m));
}

TEST(Translation, GeneralQ) {
  for (const auto& q : {make_rational(1, 2), make_rational(1, 3), make_rational(-1, 2)}) {
    EXPECT_TRUE(star_translation_check(q, 4).passed()) << to_string(q);
  }
}
