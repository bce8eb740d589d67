#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "starclt/check_result.hpp"
#include "starclt/clt.hpp"
#include "starclt/errors.hpp"
#include "starclt/group_algebra.hpp"
#include "starclt/gue.hpp"
#include "starclt/rational.hpp"
#include "starclt/series.hpp"

namespace starclt {

inline constexpr unsigned kDefaultUnivariateCap = 12;
inline constexpr unsigned kDefaultMultivariateCap = 8;

/// Q_d(z) = sum_{j=0}^{d-1} C(d-1, j) z^{2j} / (d^j (j+1)!).
inline TruncatedSeries q_polynomial(std::int64_t d, unsigned cap) {
  if (d < 1) throw InvalidArgument("Q_d needs d >= 1");
  TruncatedSeries q(1, cap);
  const Rational dim(d);
  for (unsigned j = 0; j < static_cast<unsigned>(d) && 2 * j <= cap; ++j) {
    q.add_term({2 * j}, Rational(binomial(static_cast<unsigned>(d - 1), j)) /
                            (power(dim, j) * Rational(factorial(j + 1))));
  }
  return q;
}

namespace detail {

/// exp(c z^2) truncated at cap.
inline TruncatedSeries gaussian_factor(const Rational& c, unsigned cap) {
  return TruncatedSeries::monomial(1, cap, 1, 2, c).exp();
}

}  // namespace detail

/// Q_d(z) exp(z^2/(2d)): the e.g.f. of the average eigenvalue distribution of a GUE matrix.
inline TruncatedSeries nu_egf(std::int64_t d, unsigned cap) {
  return q_polynomial(d, cap) * detail::gaussian_factor(make_rational(1, 2 * d), cap);
}

/// Q_d(z) exp((d-1) z^2/(2 d^2)): the e.g.f. of the limit law of the star-generator sums.
inline TruncatedSeries mu_egf(std::int64_t d, unsigned cap) {
  return q_polynomial(d, cap) * detail::gaussian_factor(make_rational(d - 1, 2 * d * d), cap);
}

/// Moments 0..k_max of the centered Gaussian of the given variance.
inline std::vector<Rational> gaussian_moments(const Rational& variance, unsigned k_max) {
  std::vector<Rational> m(k_max + 1, Rational(0));
  for (unsigned k = 0; k <= k_max; k += 2) m[k] = Rational(double_factorial_odd(k / 2)) * power(variance, k / 2);
  return m;
}

/// Moments of the convolution: m_k = sum_j C(k, j) a_j b_{k-j}.
inline std::vector<Rational> convolve_moments(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                              unsigned k_max) {
  if (a.size() <= k_max || b.size() <= k_max) throw InvalidArgument("moment sequences shorter than k_max");
  std::vector<Rational> out(k_max + 1, Rational(0));
  for (unsigned k = 0; k <= k_max; ++k) {
    for (unsigned j = 0; j <= k; ++j) out[k] += Rational(binomial(k, j)) * a[j] * b[k - j];
  }
  return out;
}

/// mu_d convolved with N(0, 1/d^2) against the moments of nu_d, orders 0..k_max.
inline CheckResult convolution_check(std::int64_t d, unsigned k_max) {
  CheckResult result{"convolution", "nu_d is mu_d convolved with the centered Gaussian of variance 1/d^2", 0, 0, {}};
  const auto mu = mu_egf(d, k_max).moments(k_max);
  const auto gauss = gaussian_moments(make_rational(1, d * d), k_max);
  const auto conv = convolve_moments(mu, gauss, k_max);
  for (unsigned k = 0; k <= k_max; ++k) {
    Rational nu = nu_moment(k, d);
    result.record(conv[k] == nu, "d=" + std::to_string(d) + " k=" + std::to_string(k) + ": " + to_string(conv[k]) +
                                     " != " + to_string(nu));
  }
  return result;
}

/// Density of mu_d written as P_d(t) times the mass-1 Gaussian density of
/// variance (d-1)/d^2. Only the even coefficients are stored: c_j for t^{2j}.
struct DensityPolynomial {
  std::int64_t d;
  std::vector<Rational> coefficients;
  Rational variance;

  /// E[t^{2m} P_d(t)] under N(0, variance).
  Rational expectation(unsigned m) const {
    Rational total = 0;
    for (unsigned j = 0; j < coefficients.size(); ++j) {
      total += coefficients[j] * Rational(double_factorial_odd(j + m)) * power(variance, j + m);
    }
    return total;
  }

  double evaluate(double t) const {
    double value = 0.0;
    double t2j = 1.0;
    for (const auto& c : coefficients) {
      value += to_double(c) * t2j;
      t2j *= t * t;
    }
    return value;
  }

  double density(double t) const {
    const double s2 = to_double(variance);
    return evaluate(t) * std::exp(-t * t / (2.0 * s2)) / std::sqrt(2.0 * std::numbers::pi * s2);
  }

  /// Full coefficient vector over t^0, t^1, ..., t^{2d-2}.
  std::vector<Rational> dense_coefficients() const {
    std::vector<Rational> out(2 * coefficients.size() - 1, Rational(0));
    for (unsigned j = 0; j < coefficients.size(); ++j) out[2 * j] = coefficients[j];
    return out;
  }

  std::string to_string() const {
    std::ostringstream out;
    for (unsigned j = 0; j < coefficients.size(); ++j) {
      out << (j ? " + " : "") << starclt::to_string(coefficients[j]);
      if (j > 0) out << "*t^" << 2 * j;
    }
    return out.str();
  }
};

namespace detail {

/// Solves A x = b exactly by Gauss-Jordan elimination with nonzero pivoting.
inline std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[row][c] -= factor * a[col][c];
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace detail

/// The even polynomial P_d of degree 2d-2 whose products with the matching
/// Gaussian reproduce the moments of mu_d of orders 0, 2, ..., 2d-2.
inline DensityPolynomial density_polynomial(std::int64_t d) {
  if (d == 1) throw DiracMassError("mu_1 is the point mass at 0 and has no density");
  if (d < 1) throw InvalidArgument("density needs d >= 2");
  const unsigned n = static_cast<unsigned>(d);
  const Rational variance = make_rational(d - 1, d * d);
  const auto mu = mu_egf(d, 2 * n - 2).moments(2 * n - 2);
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> b(n);
  for (unsigned m = 0; m < n; ++m) {
    for (unsigned j = 0; j < n; ++j) a[m][j] = Rational(double_factorial_odd(j + m)) * power(variance, j + m);
    b[m] = mu[2 * m];
  }
  return {d, detail::solve_exact(std::move(a), std::move(b)), variance};
}

/// Coefficients R_d (even powers) for the density written as
/// (2 pi)^{-1/2} R_d(t) exp(-t^2 d^2/(2d-2)), i.e. R_d = P_d * d / sqrt(d-1).
/// Rational only when d-1 is a perfect square; otherwise throws.
inline std::vector<Rational> unit_prefactor_density_coefficients(std::int64_t d) {
  const auto p = density_polynomial(d);
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(d - 1))));
  if (root * root != d - 1) {
    throw InvalidArgument("unit-prefactor coefficients are irrational unless d-1 is a perfect square");
  }
  std::vector<Rational> out;
  for (const auto& c : p.coefficients) out.push_back(c * make_rational(d, root));
  return out;
}

/// 1 + sum over tuples of mu(X_{i(1)} ... X_{i(k)}) / k! z_{i(1)} ... z_{i(k)}.
inline TruncatedSeries multivariate_egf(const MomentTable& table, unsigned cap) {
  if (cap > table.order_cap()) throw InvalidArgument("series cap exceeds moment table order");
  const unsigned r = table.variables();
  TruncatedSeries f = TruncatedSeries::constant(r, cap, 1);
  for (unsigned k = 1; k <= cap; ++k) {
    const Rational inv = Rational(1) / Rational(factorial(k));
    for_each_tuple(r, k, [&](const std::vector<Index>& tuple) {
      TruncatedSeries::Exponents e(r, 0);
      for (Index i : tuple) ++e[i - 1];
      f.add_term(e, table.at(tuple) * inv);
    });
  }
  return f;
}

/// f~_1(z) = sum_m t_sum(m)/(2m)! z^m, with t_sum(m) the pairing sum of t over P2(2m).
inline TruncatedSeries pairing_series(const PartitionFunction& t, unsigned cap) {
  TruncatedSeries f(1, cap);
  for (unsigned m = 0; 2 * m <= cap; ++m) f.add_term({m}, pairing_sum(t, m) / Rational(factorial(2 * m)));
  return f;
}

inline CheckResult compare_series(const std::string& check, const std::string& reference, const TruncatedSeries& lhs,
                                  const TruncatedSeries& rhs) {
  CheckResult result{check, reference, 0, 0, {}};
  std::map<TruncatedSeries::Exponents, bool> keys;
  for (const auto& [e, c] : lhs.terms()) keys[e] = true;
  for (const auto& [e, c] : rhs.terms()) keys[e] = true;
  for (const auto& [e, unused] : keys) {
    Rational a = lhs.coefficient(e);
    Rational b = rhs.coefficient(e);
    std::ostringstream w;
    w << "exponent (";
    for (std::size_t p = 0; p < e.size(); ++p) w << (p ? "," : "") << e[p];
    w << "): " << to_string(a) << " != " << to_string(b);
    result.record(a == b, w.str());
  }
  return result;
}

/// The r-variate limit e.g.f. f equals f~_1(z_1^2 + ... + z_r^2).
inline CheckResult sum_of_squares_check(const PartitionFunction& t, unsigned r, unsigned cap) {
  const auto f = multivariate_egf(multivariate_limit_moments(t, r, cap), cap);
  const auto g = compose_with_sum_of_squares(pairing_series(t, cap), r, cap);
  return compare_series("sum-of-squares", "the commuting e.g.f. of the limit is a series in z_1^2 + ... + z_r^2", f,
                        g);
}

/// f(z) exp((z_1^2 + ... + z_r^2)/(2 d^2)) = g(z), where f is the commuting
/// e.g.f. of the limit of the centered star-generators at q = 1/d and g the
/// commuting e.g.f. of r independent d x d GUE matrices (Wick moments).
inline CheckResult multivariate_convolution_report(unsigned r, std::int64_t d, unsigned cap) {
  auto t = PartitionFunction(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter::from_dimension(d)));
  const auto f = multivariate_egf(multivariate_limit_moments(t, r, cap), cap);
  const auto wick = tabulate_by_kernel(r, cap, [&](const SetPartition& ker) {
    return wick_joint_moment(ker.block_labels(), d);
  });
  const auto g = multivariate_egf(wick, cap);
  TruncatedSeries squares(r, cap);
  for (unsigned p = 1; p <= r; ++p) squares += TruncatedSeries::monomial(r, cap, p, 2, make_rational(1, 2 * d * d));
  auto result = compare_series("multivariate-convolution",
                               "limit e.g.f. times exp(|z|^2/2d^2) equals the GUE commuting e.g.f.", f * squares.exp(),
                               g);
  result.check += " r=" + std::to_string(r) + " d=" + std::to_string(d);
  return result;
}

inline bool multivariate_convolution_check(unsigned r, std::int64_t d, unsigned cap) {
  return multivariate_convolution_report(r, d, cap).passed();
}

/// The translation identity for star-generators at a general q: t from
/// gamma_n - q, u from gamma_n, translation by q.
inline CheckResult star_translation_check(const Rational& q, unsigned m_max) {
  const CharacterParameter param{q};
  PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(param));
  PartitionFunction u(std::make_shared<StarGeneratorOracle>(param));
  return translation_check(t, u, q, m_max);
}

}  // namespace starclt
